"""Closed-form right-hand sides of the projection error estimates.

All bounds are relative to ||f||_{L^2(R)}.  Each evaluator checks the
hypotheses of its estimate and raises :class:`DomainError` naming the first
violated inequality.
"""
import math
from dataclasses import dataclass

from .errors import DomainError

# hypothesis reading recorded in bound metadata
HYPOTHESIS_NOTE = "n >= max(2 T^2, 2 Omega0^2) with T >= T0 the evaluation half-width"


@dataclass(frozen=True)
class BoundInput:
    n: int
    T: float
    T0: float = 2.0
    Omega0: float = 2.0
    eps_T: float = 0.0
    eps_Omega: float = 0.0
    alpha: float = None
    c: float = None
    hs_norm: float = None


def _require(ok, inequality):
    if not ok:
        raise DomainError(f"precondition violated: {inequality}", bound=inequality)


def _common(b):
    _require(b.n >= 0, "n >= 0")
    _require(b.T > 0, "T > 0")
    _require(0.0 <= b.eps_T <= 1.0, "0 <= eps_T <= 1")
    _require(0.0 <= b.eps_Omega <= 1.0, "0 <= eps_Omega <= 1")


def _unscaled(b):
    _common(b)
    _require(b.T0 >= 2, "T0 >= 2")
    _require(b.Omega0 >= 2, "Omega0 >= 2")


def local_projection_bound(b: BoundInput) -> float:
    """2 eps_T + eps_Omega + 34 T^3/sqrt(2n+1) on [-T, T]."""
    _unscaled(b)
    _require(b.T >= b.T0, "T >= T0")
    _require(b.n >= 2 * b.T**2, "n >= 2*T**2")
    _require(b.n >= 2 * b.Omega0**2, "n >= 2*Omega0**2")
    return 2 * b.eps_T + b.eps_Omega + 34 * b.T**3 / math.sqrt(2 * b.n + 1)


def local_projection_bound_hs(b: BoundInput) -> float:
    """eps_Omega + ||R_n^T||_HS + 2 eps_T on [-T, T]."""
    _common(b)
    _require(b.hs_norm is not None, "hs_norm given")
    _require(b.hs_norm >= 0, "hs_norm >= 0")
    _require(b.Omega0 >= 2, "Omega0 >= 2")
    _require(b.n >= 2 * b.Omega0**2, "n >= 2*Omega0**2")
    return b.eps_Omega + b.hs_norm + 2 * b.eps_T


def global_projection_bound(b: BoundInput) -> float:
    """(2 eps_T + 1/(2 sqrt T) + 12 T^{5/2} ln(2n+1)/sqrt(2n+1))^{1/2} off [-T, T]."""
    _unscaled(b)
    _require(b.T >= 2 * b.T0, "T >= 2*T0")
    _require(b.n >= 2 * b.T0**2, "n >= 2*T0**2")
    _require(b.n >= 2 * b.Omega0**2, "n >= 2*Omega0**2")
    m = 2 * b.n + 1
    return math.sqrt(2 * b.eps_T + 0.5 / math.sqrt(b.T) + 12 * b.T**2.5 * math.log(m) / math.sqrt(m))


def scaled_projection_bound(b: BoundInput) -> float:
    """eps_T + eps_{c/alpha} + 24 (T/alpha)^3/sqrt(2n+1) for the basis h_k(x/alpha)/sqrt(alpha).

    ``eps_Omega`` is read as the band concentration at c/alpha.
    """
    _common(b)
    _require(b.alpha is not None and b.alpha > 0, "alpha > 0")
    _require(b.c is not None, "c given")
    _require(b.T >= 2, "T >= 2")
    _require(b.c >= 2 / b.alpha, "c >= 2/alpha")
    _require(b.n >= 2 * (b.T / b.alpha) ** 2, "n >= 2*(T/alpha)**2")
    _require(b.n >= 2 * b.c**2, "n >= 2*c**2")
    return b.eps_T + b.eps_Omega + 24 * (b.T / b.alpha) ** 3 / math.sqrt(2 * b.n + 1)


def l1_residual_bound(n, T, l1_norm):
    """17 T^{5/2} ||f||_{L^1([-T,T])}/sqrt(n), a bound on ||P_T R_n^T P_T f||."""
    _require(n > 0, "n > 0")
    _require(T > 0, "T > 0")
    _require(l1_norm >= 0, "l1_norm >= 0")
    return 17 * T**2.5 * l1_norm / math.sqrt(n)


BOUND_KINDS = {
    "local": local_projection_bound,
    "local-hs": local_projection_bound_hs,
    "global": global_projection_bound,
    "scaled": scaled_projection_bound,
}


def min_n_for(target, bound_kind, b: BoundInput, n_max=10**9):
    """Smallest n for which the bound is <= target, by bisection on the monotone bound.

    Values of n that violate the hypotheses count as not meeting the target.
    Returns None if even ``n_max`` does not reach it.
    """
    if bound_kind not in BOUND_KINDS:
        raise DomainError(f"unknown bound kind {bound_kind!r}; choose from {sorted(BOUND_KINDS)}")
    fn = BOUND_KINDS[bound_kind]

    def ok(n):
        try:
            return fn(_with_n(b, n)) <= target
        except DomainError as exc:
            if exc.bound is not None and exc.bound.startswith("n >="):
                return False
            raise

    if not ok(n_max):
        return None
    lo, hi = 0, n_max
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _with_n(b, n):
    d = dict(b.__dict__)
    d["n"] = n
    return BoundInput(**d)
