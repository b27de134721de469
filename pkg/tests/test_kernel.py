import math

import numpy as np
import pytest

from hermite_approx import DomainError, hermite_eval_slice
from hermite_approx.kernel import (DIAGONAL_TOL, _diagonal, cd_kernel, cd_kernel_matrix,
                                   kernel_row_mass, residual_bound, residual_grid,
                                   residual_hs_norm, residual_operator_norm, sinc_frequency,
                                   sinc_kernel, tail_bound, tail_mass, window_mass)
from hermite_approx.quadrature import quad_integrate

# Example 1 table, T = 1
PUBLISHED_SUP = {10: 0.067, 25: 0.039, 50: 0.025, 75: 0.023, 100: 0.022}
PUBLISHED_HS = {10: 0.051, 25: 0.034, 50: 0.022, 75: 0.019, 100: 0.017}


def direct_sum(n, x, y):
    return float(hermite_eval_slice(n, x).as_floats() @ hermite_eval_slice(n, y).as_floats())


def test_cd_kernel_small_cases():
    assert cd_kernel(0, 0.0, 0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert cd_kernel(10, 0.3, 0.7) == pytest.approx(direct_sum(10, 0.3, 0.7), rel=1e-10)
    for n, x, y in ((3, -1.0, 2.0), (40, 0.2, -0.9), (150, 3.0, 3.5)):
        assert cd_kernel(n, x, y) == cd_kernel(n, y, x)
        assert cd_kernel(n, x, y) == pytest.approx(direct_sum(n, x, y), rel=1e-9, abs=1e-13)


def test_diagonal_branch():
    for n, x in ((5, 0.0), (60, 1.7), (200, -4.0)):
        assert cd_kernel(n, x, x) == pytest.approx(direct_sum(n, x, x), rel=1e-12)
        assert cd_kernel(n, x, x) > 0


def test_near_diagonal_continuity():
    for n, x in ((20, 0.5), (100, -1.2)):
        tau = DIAGONAL_TOL * (1 + abs(x))
        quotient = cd_kernel(n, x, x + 1.01 * tau)
        limit = _diagonal(n, np.array([x + 0.505 * tau]))[0]
        assert quotient == pytest.approx(limit, rel=1e-6)


def test_sinc_kernel():
    N = sinc_frequency(10)
    assert N == 0.5 * (math.sqrt(21) + math.sqrt(23))
    assert sinc_kernel(N, 0.4, 0.4) == N / math.pi
    assert sinc_kernel(N, 0.1, 0.8) == sinc_kernel(N, 0.8, 0.1)
    assert sinc_kernel(N, 0.0, 1e-9) == pytest.approx(N / math.pi, rel=1e-15)
    assert sinc_kernel(N, 0.0, 0.3) == pytest.approx(math.sin(N * -0.3) / (math.pi * -0.3), rel=1e-15)
    with pytest.raises(DomainError):
        sinc_kernel(0.0, 0.0, 1.0)


def test_residual_grid_example1():
    for n, ref in PUBLISHED_SUP.items():
        g = residual_grid(n, 1.0, 80)
        assert abs(g.sup_residual - ref) <= 0.005
        assert g.sup_residual <= residual_bound(n, 1.0)
        np.testing.assert_array_equal(g.residual, g.k_values - g.sinc_values)
        np.testing.assert_allclose(g.k_values, g.k_values.T, rtol=0, atol=1e-14)
    assert residual_bound(10, 1.0) == pytest.approx(3.709, abs=1e-3)


def test_residual_grid_preconditions():
    with pytest.raises(DomainError) as e:
        residual_grid(5, 1.0)
    assert e.value.bound == "n >= 6"
    with pytest.raises(DomainError) as e:
        residual_grid(7, 2.0)
    assert e.value.bound == "n >= 2*T**2"
    with pytest.raises(DomainError):
        residual_grid(10, 0.5)


def test_hs_norm_example1():
    prev = math.inf
    for n, ref in PUBLISHED_HS.items():
        hs = residual_hs_norm(n, 1.0)
        assert abs(hs - ref) <= 0.005
        assert 0 <= hs <= 2 * residual_grid(n, 1.0).sup_residual
        assert hs <= prev
        prev = hs


def test_hs_norm_quadrature_converged():
    a = residual_hs_norm(25, 1.0, quad_order=10)
    b = residual_hs_norm(25, 1.0, quad_order=16)
    assert a == pytest.approx(b, rel=1e-10)


def test_operator_norm_below_hs():
    hs = residual_hs_norm(30, 1.0)
    f = lambda x: np.where(np.abs(x) <= 0.5, 1.0, 0.0)
    assert residual_operator_norm(30, 1.0, np.cos) <= hs * math.sqrt(quad_integrate(lambda x: np.cos(x) ** 2, (-1, 1)))
    assert residual_operator_norm(30, 1.0, f) >= 0


def test_row_mass():
    assert kernel_row_mass(0, 0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert kernel_row_mass(12, 0.9) == pytest.approx(direct_sum(12, 0.9, 0.9), rel=1e-14)
    L = 2 * math.sqrt(2 * 50 + 3)
    assert kernel_row_mass(50, 0.4) == pytest.approx(window_mass(50, 0.4, -L, L), abs=1e-8)


def test_reproducing_identity_on_windows():
    rng = np.random.default_rng(3)
    for n in (10, 40, 100):
        L = 2 * math.sqrt(2 * n + 3)
        for x, z in rng.uniform(-2, 2, size=(5, 2)):
            val = quad_integrate(lambda y: cd_kernel_matrix(n, [x], y)[0] * cd_kernel_matrix(n, [z], y)[0],
                                 (-L, L), oscillation_freq=sinc_frequency(n))
            assert abs(val - cd_kernel(n, x, z)) <= 1e-8


def test_tail_mass():
    r = tail_mass(32, 2.0, 0.0)
    assert r.bound == pytest.approx(2 / (2 * math.pi**2) + 12 * 4 * math.log(65) / math.sqrt(65))
    assert 0 <= r.tail_mass <= r.bound
    assert r.tail_mass <= kernel_row_mass(32, 0.0)
    r = tail_mass(200, 2.0, 1.5)
    assert 0 <= r.tail_mass <= r.bound
    assert r.bound == tail_bound(200, 2.0)


def test_tail_mass_matches_wide_window():
    n, T, x = 64, 2.0, 1.0
    L = 2 * math.sqrt(2 * n + 3) + 2 * T
    direct = window_mass(n, x, -L, -2 * T) + window_mass(n, x, 2 * T, L)
    assert tail_mass(n, T, x).tail_mass == pytest.approx(direct, abs=1e-10)


def test_tail_mass_preconditions():
    with pytest.raises(DomainError):
        tail_mass(32, 1.5, 0.0)
    with pytest.raises(DomainError):
        tail_mass(7, 2.0, 0.0)
    with pytest.raises(DomainError):
        tail_mass(32, 2.0, 2.5)


def test_kernel_grid_csv(tmp_path):
    g = residual_grid(8, 1.0, 3)
    path = tmp_path / "grid.csv"
    g.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,y,k,sinc,residual"
    assert len(lines) == 10
    row = [float(v) for v in lines[5].split(",")]
    assert row[4] == pytest.approx(row[2] - row[3])
