import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermite_approx import DomainError
from hermite_approx.expansion import (CoefficientVector, band_concentration, concentration_report,
                                      expand, projection_error, reconstruct, sobolev_band_bound,
                                      sobolev_norm, time_concentration)
from hermite_approx.hermite import hermite_table
from hermite_approx.quadrature import quad_integrate
from hermite_approx.signals import (gaussian, hat, hermite_signal, indicator, load_csv, parse_signal,
                                    sampled)

SIGNALS = [indicator(-0.5, 0.5), indicator(-0.2, 0.7), hat(0, 1), hat(0.3, 0.5), gaussian(0.7),
           hermite_signal(5)]


def indicator_band_oracle(width, Omega):
    """eps_Omega of a width-w indicator from the sine integral."""
    with mp.workdps(30):
        U = mp.mpf(Omega) * width / 2
        outside = mp.sin(U) ** 2 / U + mp.pi / 2 - mp.si(2 * U)
        return float(mp.sqrt(2 / mp.pi * outside))


def test_closed_form_norms():
    assert indicator(-0.5, 0.5).l2_norm == 1.0
    assert indicator(1, 4).l2_norm == pytest.approx(math.sqrt(3))
    assert hat(0, 1).l2_norm == pytest.approx(math.sqrt(2 / 3))
    assert hermite_signal(7).l2_norm == 1.0
    for f in SIGNALS:
        lo, hi = f.extent
        num = quad_integrate(lambda x: f(x) ** 2, (lo, hi), f.frequency, f.breakpoints)
        assert f.l2_norm == pytest.approx(math.sqrt(num), rel=1e-12)


def test_fourier_energy_is_parseval():
    for f in SIGNALS + [f.dilate(3.0) for f in SIGNALS]:
        W = 4e4 if not f.fast_spectral_decay else f.spectral_extent()
        e = 2 * quad_integrate(f.fourier_abs2, (0, W), f.spectral_frequency())
        tol = 1e-12 if f.fast_spectral_decay else 2e-4
        assert e == pytest.approx(f.l2_norm**2, rel=tol)


def test_dilation_is_unitary():
    f = hat(0.2, 0.6)
    for b in (0.1, 1.0, 7.0):
        g = f.dilate(b)
        assert g.l2_norm == pytest.approx(f.l2_norm, rel=1e-15)
        assert g(0.5 * b) == pytest.approx(f(0.5) / math.sqrt(b))


def test_expand_basis_element():
    c = expand(hermite_signal(3), 6, 1.0)
    np.testing.assert_allclose(c.coeffs, [0, 0, 0, 1, 0, 0, 0], atol=1e-13)
    xs = np.linspace(-3, 3, 41)
    c2 = expand(hermite_signal(2), 5, 1.0)
    np.testing.assert_allclose(reconstruct(c2, xs), hermite_table(2, xs)[2], atol=1e-10)


def test_expand_indicator_oracle_and_parity():
    c = expand(indicator(-0.5, 0.5), 4, 1.0)
    ref = float(mp.pi ** -0.25 * mp.sqrt(2 * mp.pi) * (mp.ncdf(0.5) - mp.ncdf(-0.5)))
    assert c.coeffs[0] == pytest.approx(ref, rel=1e-13)
    assert abs(c.coeffs[1]) < 1e-15 and abs(c.coeffs[3]) < 1e-15


def test_parity_of_coefficients():
    for f in (indicator(-0.5, 0.5), hat(0, 1), gaussian(1.3)):
        for alpha in (0.1, 1.0, 3.0):
            c = expand(f, 40, alpha).coeffs
            assert np.max(np.abs(c[1::2])) <= 1e-10


def test_reconstruct_parity():
    c = expand(hat(0, 1), 30, 0.5)
    xs = np.linspace(0.01, 2, 50)
    np.testing.assert_allclose(reconstruct(c, xs), reconstruct(c, -xs), atol=1e-14)


def test_scaling_covariance():
    for f in SIGNALS:
        for alpha in (0.1, 0.5, 2.0, 10.0):
            a = expand(f, 30, alpha).coeffs
            b = expand(f.dilate(1 / alpha), 30, 1.0).coeffs
            assert np.max(np.abs(a - b)) <= 1e-10


def test_bessel_and_monotone_partial_sums():
    for f in SIGNALS:
        for alpha in (0.2, 1.0):
            c = expand(f, 60, alpha).coeffs
            partial = np.cumsum(c**2)
            assert partial[-1] <= f.l2_norm**2 + 1e-8
            assert np.all(np.diff(partial) >= 0)


def test_projection_error_basis_element_and_monotone():
    assert projection_error(hermite_signal(4), 6, 1.0, 3.0) < 1e-10
    for f in (indicator(-0.5, 0.5), hat(0, 1)):
        for alpha in (0.1, 1.0):
            errs = [projection_error(f, n, alpha, 1.0) for n in (10, 20, 40, 80)]
            assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_projection_error_regions():
    f = gaussian(0.4)
    c = expand(f, 10, 1.0)
    inside = projection_error(f, 10, 1.0, 2.0, coeffs=c)
    outside = projection_error(f, 10, 1.0, 2.0, region="outside", coeffs=c)
    total = math.sqrt(f.l2_norm**2 - np.sum(c.coeffs**2))
    assert math.hypot(inside, outside) == pytest.approx(total, rel=1e-6)
    with pytest.raises(DomainError):
        projection_error(f, 10, 1.0, 2.0, region="both")


def test_scaled_basis_beats_unscaled_on_indicator():
    # basis h_k(x/s)/sqrt(s) with s = 0.1 compresses the basis tenfold
    f = indicator(-0.5, 0.5)
    assert projection_error(f, 80, 0.1, 1.0) < projection_error(f, 40, 0.1, 1.0)
    assert projection_error(f, 40, 1.0, 1.0) > projection_error(f, 40, 0.1, 1.0)


def test_time_concentration():
    assert time_concentration(indicator(-0.5, 0.5), 0.5) == 0.0
    assert time_concentration(hat(0, 1), 1.0) == 0.0
    assert time_concentration(indicator(-0.5, 0.5), 0.25) == pytest.approx(math.sqrt(0.5))
    g = gaussian(1.0)
    vals = [time_concentration(g, T) for T in (0.5, 1, 2, 4, 8, 16)]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] == 0.0
    assert time_concentration(g, 1.0) == pytest.approx(math.sqrt(math.erfc(1.0)), rel=1e-12)


def test_band_concentration_closed_forms():
    f = indicator(-0.5, 0.5)
    prev = 1.0
    for Om in (0.5, 1, 5, 10, 40, 200):
        e = band_concentration(f, Om)
        assert e == pytest.approx(indicator_band_oracle(1.0, Om), abs=1e-10)
        assert e <= prev
        prev = e
    assert band_concentration(indicator(2, 2.5), 7.0) == pytest.approx(indicator_band_oracle(0.5, 7.0), abs=1e-10)
    g = gaussian(0.8)
    assert band_concentration(g, 1.0) == pytest.approx(math.sqrt(math.erfc(0.8)), rel=1e-12)
    assert band_concentration(g, 50.0) == 0.0


def test_band_equals_time_for_hermite():
    for k in (0, 3, 10):
        for W in (0.5, 2.0, 4.0):
            assert band_concentration(hermite_signal(k), W) == pytest.approx(
                time_concentration(hermite_signal(k), W), abs=1e-13)


def test_sampled_dft_matches_closed_forms():
    eps = 1e-9
    box = sampled([-0.5 - eps, -0.5, 0.5, 0.5 + eps], [0, 1, 1, 0])
    for Om in (1, 5, 10, 40):
        assert abs(band_concentration(box, Om) - indicator_band_oracle(1.0, Om)) < 1e-4
    tri = sampled([-1, 0, 1], [0, 1, 0])
    for Om in (1, 5, 10):
        assert abs(band_concentration(tri, Om) - band_concentration(hat(0, 1), Om)) < 1e-4


def test_sampled_signal_rules(tmp_path):
    with pytest.raises(DomainError):
        sampled([0, 1, 1], [0, 1, 0])
    with pytest.raises(DomainError):
        expand(sampled([0, 1, 2], [1, 1, 0]), 5, 1.0)
    s = sampled([-1, 0, 1], [0, 1, 0])
    assert s.l2_norm == pytest.approx(hat(0, 1).l2_norm, rel=1e-15)
    np.testing.assert_allclose(expand(s, 20, 0.5).coeffs, expand(hat(0, 1), 20, 0.5).coeffs, atol=1e-13)
    p = tmp_path / "sig.csv"
    p.write_text("x,value\n-1,0\n0,1\n1,0\n")
    assert load_csv(p).l2_norm == s.l2_norm
    assert parse_signal(f"csv:{p}").kind == "sampled"
    assert parse_signal("hat:0,1").params == (0.0, 1.0)


def test_zero_signal_rejected():
    z = sampled([0, 1, 2], [0, 0, 0])
    with pytest.raises(DomainError):
        time_concentration(z, 1.0)
    with pytest.raises(DomainError):
        band_concentration(z, 1.0)


def test_concentration_report():
    r = concentration_report(hat(0, 1), 0.5, 3.0)
    assert 0 <= r.eps_T <= 1 and 0 <= r.eps_Omega <= 1
    assert r.l2_norm == hat(0, 1).l2_norm


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 20), st.floats(0.05, 20))
def test_concentration_monotone(a, b):
    lo, hi = sorted((a, b))
    f = hat(0.1, 0.8)
    assert time_concentration(f, hi) <= time_concentration(f, lo) + 1e-12
    assert band_concentration(f, hi) <= band_concentration(f, lo) + 1e-12


def test_sobolev_band_bound():
    assert sobolev_band_bound(1, 1, 2.0, 0) == 1
    assert sobolev_band_bound(2, 1, 1, 1) == 1
    g = hat(0, 1)
    hs = sobolev_norm(g, 1.4)
    assert sobolev_band_bound(hs, g.l2_norm, 1.4, 10) >= band_concentration(g, 10)
    with pytest.raises(DomainError):
        sobolev_norm(indicator(0, 1), 0.6)


def test_sobolev_norm_against_oracle():
    # H^1 norm of the hat by direct integration: int (1+|w|)^2 |g^|^2 dw
    g = hat(0, 1)
    with mp.workdps(20):
        f = lambda w: (1 + w) ** 2 * 8 * mp.sin(w / 2) ** 4 / (mp.pi * w**4)
        ref = 2 * mp.quadosc(f, [0, mp.inf], period=2 * mp.pi)
    assert sobolev_norm(g, 1.0) == pytest.approx(math.sqrt(float(ref)), rel=1e-4)


def test_coefficient_csv_roundtrip(tmp_path):
    c = expand(hat(0, 1), 12, 0.25)
    p = tmp_path / "c.csv"
    c.to_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0].startswith("# n=12,alpha=0.25")
    assert lines[1] == "k,coeff"
    d = CoefficientVector.from_csv(p)
    assert d.n == 12 and d.alpha == 0.25
    np.testing.assert_array_equal(d.coeffs, c.coeffs)
    assert d.quad_meta["nodes_per_panel"] == 10
    assert d.quad_meta["interval"] == c.quad_meta["interval"]
