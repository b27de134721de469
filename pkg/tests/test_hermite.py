import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import hermite_oracle, scaled_relative_error
from hermite_approx import (CapacityError, DomainError, HermiteValue, hermite_eval,
                            hermite_eval_slice, hermite_table, hermite_zero_value, ode_residual)
from hermite_approx.quadrature import quad_integrate

PI_M14 = math.pi ** -0.25

# 60-digit oracle value of h_10(0.5), frozen
H10_HALF = 0.24565730461572117696791286463460646605033182543783


def test_closed_form_values():
    assert hermite_eval(0, 0.0) == pytest.approx(0.7511255444649425, rel=1e-15)
    assert hermite_eval(1, 0.0) == 0.0
    assert hermite_eval(2, 0.0) == pytest.approx(-0.5311259660135985, rel=1e-15)


def test_frozen_oracle_value():
    assert float(hermite_oracle(10, 0.5, dps=60)) == pytest.approx(H10_HALF, rel=1e-15)
    assert hermite_eval(10, 0.5) == pytest.approx(H10_HALF, rel=1e-12)


def test_slice_values_and_derivatives():
    s = hermite_eval_slice(3, 0.0)
    np.testing.assert_allclose(s.as_floats(), [PI_M14, 0.0, -PI_M14 / math.sqrt(2), 0.0], rtol=1e-15)
    d = hermite_eval_slice(1, 0.0, with_derivatives=True).derivative_floats()
    assert d[1] == pytest.approx(1.0622519320271968, rel=1e-14)
    assert d[1] == pytest.approx(math.sqrt(2) * PI_M14, rel=1e-15)


def test_slice_matches_scalar_bitwise():
    s = hermite_eval_slice(50, 1.25)
    assert float(s.values[50]) == hermite_eval(50, 1.25)
    xs = np.array([-3.0, 0.1, 1.25, 7.5])
    t = hermite_table(50, xs)
    for i, x in enumerate(xs):
        assert np.array_equal(t[:, i], hermite_eval_slice(50, x).as_floats())


def test_derivatives_against_oracle():
    x = 0.8
    d = hermite_eval_slice(12, x, with_derivatives=True).derivative_floats()
    for k in (0, 1, 5, 12):
        ref = mp.diff(lambda t: hermite_oracle(k, t), x)
        assert d[k] == pytest.approx(float(ref), rel=1e-12, abs=1e-14)


def test_zero_values():
    assert hermite_zero_value(0) == pytest.approx(PI_M14, rel=1e-15)
    assert hermite_zero_value(4) == pytest.approx(float(mp.pi ** -0.25 * mp.sqrt(mp.mpf(3) / 8)), rel=1e-14)
    assert hermite_zero_value(4) == pytest.approx(PI_M14 * math.sqrt(3 / 8), rel=1e-15)
    assert hermite_zero_value(3) == pytest.approx(-math.sqrt(6) * PI_M14 * math.sqrt(0.5), rel=1e-15)
    assert hermite_zero_value(3) == pytest.approx(-1.3009876, rel=1e-7)
    for n in (20, 21, 300, 301):
        ref = hermite_oracle(n, 0) if n % 2 == 0 else mp.diff(lambda t: hermite_oracle(n, t), 0)
        assert hermite_zero_value(n) == pytest.approx(float(ref), rel=1e-12)
    # no overflow at the capacity limit
    assert 0 < abs(hermite_zero_value(10**6)) < 1


def test_scaled_form_beyond_underflow():
    # h_400(60) is far below the smallest double
    v = hermite_eval_slice(400, 60.0).values[-1]
    assert v.exponent < -1100
    assert scaled_relative_error(v, hermite_oracle(400, 60.0)) < 1e-13
    assert hermite_eval(400, 60.0) == 0.0


def test_hermite_value_normalization():
    v = HermiteValue.from_parts(-3.0, 5)
    assert (v.mantissa, v.exponent) == (-1.5, 6)
    assert float(v) == -96.0
    assert HermiteValue.from_parts(0.0, 7) == HermiteValue(0.0, 0)
    assert v.log2_abs() == pytest.approx(6 + math.log2(1.5))


def test_errors():
    with pytest.raises(DomainError):
        hermite_eval(3, float("nan"))
    with pytest.raises(DomainError):
        hermite_eval(-1, 0.0)
    with pytest.raises(CapacityError):
        hermite_eval(10**6 + 1, 0.0)
    with pytest.raises(CapacityError):
        hermite_eval(11, 0.0, max_order=10)


def test_accuracy_sweep_large_order():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(40):
        n = int(rng.integers(0, 2001))
        x = float(rng.uniform(-2, 2) * math.sqrt(2 * n + 1))
        v = hermite_eval_slice(n, x).values[-1]
        worst = max(worst, scaled_relative_error(v, hermite_oracle(n, x)))
    assert worst < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 300), st.floats(-40, 40))
def test_parity(n, x):
    a, b = hermite_eval_slice(n, x).values[-1], hermite_eval_slice(n, -x).values[-1]
    assert a.exponent == b.exponent
    assert a.mantissa == (-1) ** n * b.mantissa


def test_ode_residual():
    assert abs(ode_residual(0, 0.3, 1e-4)) <= 1e-6 * (1 + hermite_eval(0, 0.3))
    assert abs(ode_residual(25, 1.0, 1e-4)) <= 1e-4 * 51
    lam = math.sqrt(2 * 30 + 1)
    assert math.isfinite(ode_residual(30, lam, 1e-3))
    with pytest.raises(DomainError):
        ode_residual(3, 0.0, 0.0)


def test_ode_residual_is_second_order():
    # residual / h^2 stays bounded as h shrinks
    for n, x in ((5, 0.7), (40, 2.0), (100, -5.0)):
        r = [abs(ode_residual(n, x, h)) / h**2 for h in (1e-2, 5e-3, 2.5e-3)]
        assert max(r) < 2 * min(r) + 1e-6 / 2.5e-3**2


def test_orthonormality():
    L = 2 * math.sqrt(2 * 100 + 3)
    G = quad_integrate(lambda x: hermite_table(100, x)[:, None, :] * hermite_table(100, x)[None, :, :],
                       (-L, L), oscillation_freq=math.sqrt(201))
    assert np.max(np.abs(G - np.eye(101))) <= 1e-10
