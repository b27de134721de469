"""WKB asymptotics of Hermite functions with explicit error envelopes.

With lam = sqrt(2n+1) and the phase

    phi_n(x) = int_0^x sqrt(2n+1 - t^2) dt
             = (2n+1)/2 * arcsin(x/lam) + x/2 * sqrt(2n+1 - x^2),

h_n is approximated inside the oscillatory region by

    h_n(0) (lam^2/(lam^2-x^2))^{1/4} cos phi_n + h_n'(0) sin phi_n / (lam^2 (lam^2-x^2))^{1/4}

and, for |x| <= T with n >= 2T^2, by the simplified term
(-1)^p/(sqrt(pi) p^{1/4}) times cos phi_n (n = 2p) or sin phi_n (n = 2p+1).
Everything here accepts scalar or array ``x``.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import _dd
from .errors import DomainError
from .hermite import hermite_table, hermite_zero_value

# Constants on the right-hand sides checked by verify_phase_lemma.
LEMMA_CONSTANTS = {
    "phase_step": 3.0,              # |phi_{n+1}(x) - phi_n(x)| <= c T/lam
    "phase_step_lipschitz": 3.0,    # |phi_{n+1}(x)-phi_{n+1}(y)-phi_n(x)+phi_n(y)| <= c |x-y|/lam
    "phase_step_sum": 5.0,          # |phi_{n+1}(x)-phi_n(x)+phi_{n+1}(y)-phi_n(y)| <= c T/lam
    "phase_sum_linear": 1.0,        # |eps_n(x,y)| <= c T^2 |x-y|/lam
    "phase_lipschitz": 1.25,        # |phi_n(x)-phi_n(y)| <= c lam |x-y|
    "defect_sup": 1.0 / 3.0,        # |e_n(x)| <= c T^3/lam
    "defect_lipschitz": 1.0,        # |e_n(x)-e_n(y)| <= c T^2 |x-y|/lam
    "envelope_sup_half": 2.0,       # |E_n(x)| <= c/lam^3
    "envelope_lipschitz_half": 8.0,  # |E_n(x)-E_n(y)| <= c |x-y|/lam^{5/2}
    "simplified_sup": 2.0,          # |E~_n(x)| <= c T^2/lam^{5/2}
    "simplified_lipschitz": 3.0,    # |E~_n(x)-E~_n(y)| <= c T^2 |x-y|/lam^{3/2}
}

_SERIES_SWITCH = 0.5
_SERIES_TERMS = 40


def _series_coefficients():
    # 1 - sqrt(1-u^2) = sum_j c_j u^{2j}; integrated term by term
    c, out = 0.5, []
    for j in range(1, _SERIES_TERMS + 1):
        out.append(c / (2 * j + 1))
        c *= (2 * j - 1) / (2 * j + 2)
    return out[::-1]


_DEFECT_SERIES = _series_coefficients()


def _lam(n):
    if int(n) != n or n < 0:
        raise DomainError(f"order must be a non-negative integer, got {n!r}")
    return math.sqrt(2 * n + 1)


def _points(n, x, strict=False):
    x = np.asarray(x, dtype=float)
    lam = _lam(n)
    outside = np.abs(x) >= lam if strict else np.abs(x) > lam
    if np.any(outside) or not np.all(np.isfinite(x)):
        rel = "<" if strict else "<="
        raise DomainError(f"need |x| {rel} sqrt(2n+1) = {lam:.6g}", bound=f"|x| {rel} sqrt(2n+1)")
    return x, lam


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def _defect_and_phase(n, x):
    x, lam = _points(n, x)
    s = x / lam
    small = np.abs(s) < _SERIES_SWITCH
    s2 = s * s
    series = np.zeros_like(s)
    for c in _DEFECT_SERIES:
        series = series * s2 + c
    e_small = (2 * n + 1) * series * s * s2
    closed = 0.5 * (2 * n + 1) * np.arcsin(np.clip(s, -1.0, 1.0)) \
        + 0.5 * x * np.sqrt(np.maximum((2 * n + 1) - x * x, 0.0))
    p, perr = _dd.two_prod(lam * np.ones_like(x), x)
    e = np.where(small, e_small, (p - closed) + perr)
    phi = np.where(small, p - e_small, closed)
    return e, phi


def phase_phi(n, x):
    """phi_n(x); defined for |x| <= sqrt(2n+1), equal to +-pi(2n+1)/4 at the ends."""
    return _out(_defect_and_phase(n, x)[1])


def phase_defect(n, x):
    """e_n(x) = sqrt(2n+1) x - phi_n(x).

    Below |x|/lam = 1/2 it is summed from the power series of
    lam^2 int_0^{x/lam} (1 - sqrt(1-u^2)) du, which has no cancellation.
    """
    return _out(_defect_and_phase(n, x)[0])


@dataclass(frozen=True)
class PhaseData:
    n: int
    x: float
    lam: float
    p: float
    phi: float
    e: float


def phase_data(n, x):
    e, phi = _defect_and_phase(n, x)
    lam = _lam(n)
    x = float(x)
    return PhaseData(int(n), x, lam, math.sqrt(max(2 * n + 1 - x * x, 0.0)), float(phi), float(e))


def wkb_main_term(n, x):
    """Main WKB term; exactly one of its cosine/sine parts is nonzero."""
    x, _ = _points(n, x, strict=True)
    l2 = 2 * n + 1
    gap = l2 - x * x
    phi = _defect_and_phase(n, x)[1]
    if n % 2 == 0:
        out = hermite_zero_value(n) * (l2 / gap) ** 0.25 * np.cos(phi)
    else:
        out = hermite_zero_value(n) * np.sin(phi) / (l2 * gap) ** 0.25
    return _out(out)


def _check_simplified(n, T):
    if T < 1:
        raise DomainError(f"need T >= 1, got T={T}", bound="T >= 1")
    if n < 2 * T * T:
        raise DomainError(f"need n >= 2T^2 = {2 * T * T:g}, got n={n}", bound="n >= 2*T**2")
    if n < 2:
        raise DomainError("need n >= 2", bound="n >= 2")


def wkb_simplified_term(n, x, T):
    """(-1)^p/(sqrt(pi) p^{1/4}) times cos phi_n (n=2p) or sin phi_n (n=2p+1)."""
    _check_simplified(n, T)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > T):
        raise DomainError(f"need |x| <= T = {T}", bound="|x| <= T")
    p = n // 2
    amp = (-1) ** p / (math.sqrt(math.pi) * p**0.25)
    phi = _defect_and_phase(n, x)[1]
    return _out(amp * (np.cos(phi) if n % 2 == 0 else np.sin(phi)))


def envelope_bound_generic(n, x):
    """(5/4) (sqrt(2n+1)/(2n+1-x^2))^{5/2}, valid for |x| < sqrt(2n+1)."""
    x = np.asarray(x, dtype=float)
    return _out(1.25 * (math.sqrt(2 * n + 1) / ((2 * n + 1) - x * x)) ** 2.5)


def envelope_bound_half(n):
    """2/(2n+1)^{3/2}, valid for |x| <= sqrt(2n+1)/2."""
    return 2.0 / (2 * n + 1) ** 1.5


def simplified_bound(n, T):
    """Sup bound on h_n minus the simplified term: 2T^2 (T >= 2) or 3T^2 (1 <= T < 2) over (2n+1)^{5/4}."""
    return (2.0 if T >= 2 else 3.0) * T * T / (2 * n + 1) ** 1.25


def simplified_lipschitz_bound(n, T):
    return (3.0 if T >= 2 else 8.0) * T * T / (2 * n + 1) ** 0.75


def family_lipschitz_bound(n, a=0.1):
    """5/(2n+1)^{3/4-5a}; applies for |x|,|y| <= (1-eta) sqrt(2n+1), (2n+1)^{-a} <= eta."""
    return 5.0 / (2 * n + 1) ** (0.75 - 5 * a)


def wkb_error(n, x):
    """h_n(x) minus the main WKB term (the recurrence value is ground truth)."""
    x = np.asarray(x, dtype=float)
    return _out(hermite_table(n, x)[n] - wkb_main_term(n, x))


@dataclass(frozen=True)
class WkbEnvelope:
    n: int
    x: float
    main_term: float
    E_measured: float
    E_bound: float
    regime: str
    T: float = None
    tilde_measured: float = None
    tilde_bound: float = None


def wkb_envelope(n, x, T=None):
    x = float(x)
    lam = _lam(n)
    if T is not None and abs(x) > T:
        raise DomainError(f"need |x| <= T = {T}", bound="|x| <= T")
    main = wkb_main_term(n, x)
    h = float(hermite_table(n, x)[n])
    if abs(x) <= lam / 2:
        regime, bound = "half", envelope_bound_half(n)
    else:
        regime, bound = "generic", envelope_bound_generic(n, x)
    tm = tb = None
    if T is not None:
        tm = h - wkb_simplified_term(n, x, T)
        tb = simplified_bound(n, T)
    return WkbEnvelope(int(n), x, main, h - main, bound, regime, T, tm, tb)


@dataclass
class LemmaReport:
    n: int
    T: float
    grid: str
    worst_ratios: dict
    locations: dict = field(default_factory=dict)
    recorded: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(r <= 1.0 for r in self.worst_ratios.values())

    def rows(self):
        """Flat records, one per inequality (``checked`` false for record-only ones)."""
        out = []
        for table, checked in ((self.worst_ratios, True), (self.recorded, False)):
            for key, ratio in table.items():
                x, y = self.locations.get(key, (math.nan, math.nan))
                out.append({"n": self.n, "T": self.T, "inequality": key, "worst_ratio": ratio,
                            "x": x, "y": y, "checked": checked})
        return out


def _worst(lhs, rhs, X, Y):
    """max lhs/rhs over the grid, skipping cells where rhs vanishes (there lhs = 0 too)."""
    lhs = np.abs(lhs) * np.ones_like(X)
    rhs = rhs * np.ones_like(X)
    ratio = np.divide(lhs, rhs, out=np.zeros_like(lhs), where=rhs > 0)
    i = np.unravel_index(np.argmax(ratio), ratio.shape)
    return float(ratio[i]), (float(X[i]), float(Y[i]))


def verify_phase_lemma(n, T, grid_points=64, constants=None):
    """Sample every phase/defect/envelope inequality on a uniform grid of [-T, T]^2.

    Requires 2 <= T <= sqrt(2n+1)/2.  ``constants`` overrides entries of
    :data:`LEMMA_CONSTANTS` (used to self-test the audit harness).
    """
    lam = _lam(n)
    if T < 2:
        raise DomainError(f"need T >= 2, got {T}", bound="T >= 2")
    if T > lam / 2:
        raise DomainError(f"need T <= sqrt(2n+1)/2 = {lam / 2:.6g}", bound="T <= sqrt(2n+1)/2")
    if grid_points < 2:
        raise DomainError("grid_points must be >= 2")
    c = dict(LEMMA_CONSTANTS, **(constants or {}))
    lam1 = _lam(n + 1)
    g = np.linspace(-T, T, grid_points)
    X, Y = np.meshgrid(g, g, indexing="ij")
    d = np.abs(X - Y)
    e0, f0 = _defect_and_phase(n, g)
    f1 = _defect_and_phase(n + 1, g)[1]
    step = f1 - f0
    ones = np.ones_like(X)
    diag = (g[:, None] * ones, g[:, None] * ones)

    checks = {
        "phase_step": (step[:, None], c["phase_step"] * T / lam, *diag),
        "phase_step_lipschitz": (step[:, None] - step[None, :], c["phase_step_lipschitz"] * d / lam, X, Y),
        "phase_step_sum": (step[:, None] + step[None, :], c["phase_step_sum"] * T / lam, X, Y),
        "phase_sum_linear": ((f1 + f0)[:, None] - (f1 + f0)[None, :] - (lam + lam1) * (X - Y),
                             c["phase_sum_linear"] * T * T * d / lam, X, Y),
        "phase_lipschitz": (f0[:, None] - f0[None, :], c["phase_lipschitz"] * lam * d, X, Y),
        "defect_sup": (e0[:, None], c["defect_sup"] * T**3 / lam, *diag),
        "defect_lipschitz": (e0[:, None] - e0[None, :], c["defect_lipschitz"] * T * T * d / lam, X, Y),
    }
    h = hermite_table(n, g)[n]
    E = h - wkb_main_term(n, g)
    checks["envelope_sup_half"] = (E[:, None], c["envelope_sup_half"] / lam**3, *diag)
    checks["envelope_lipschitz_half"] = (E[:, None] - E[None, :],
                                         c["envelope_lipschitz_half"] * d / lam**2.5, X, Y)
    if n >= 2 * T * T:
        Et = h - wkb_simplified_term(n, g, T)
        checks["simplified_sup"] = (Et[:, None], c["simplified_sup"] * T * T / lam**2.5, *diag)
        checks["simplified_lipschitz"] = (Et[:, None] - Et[None, :],
                                          c["simplified_lipschitz"] * T * T * d / lam**1.5, X, Y)

    worst, where = {}, {}
    for key, (lhs, rhs, xx, yy) in checks.items():
        worst[key], where[key] = _worst(lhs, rhs, xx, yy)

    # Lipschitz family statement, a = 1/10: reported only
    eta = (2 * n + 1) ** -0.1
    gf = np.linspace(-(1 - eta) * lam, (1 - eta) * lam, grid_points)
    Ef = hermite_table(n, gf)[n] - wkb_main_term(n, gf)
    XF, YF = np.meshgrid(gf, gf, indexing="ij")
    rec, loc = _worst(Ef[:, None] - Ef[None, :], family_lipschitz_bound(n) * np.abs(XF - YF), XF, YF)
    where["envelope_lipschitz_family"] = loc
    return LemmaReport(int(n), float(T), f"uniform {grid_points}x{grid_points} on [-T,T]^2",
                       worst, where, {"envelope_lipschitz_family": rec})
