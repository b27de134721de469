"""Orthonormal Hermite functions h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}.

Values come from the normalized three-term recurrence

    h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x),

seeded with h_0 = pi^{-1/4} e^{-x^2/2}.  The recurrence is carried in
double-double arithmetic and every row has its own binary exponent, so the
Gaussian seed never underflows and the final rounding to a double is the only
significant error even close to a zero of h_n.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _dd
from .errors import CapacityError, DomainError

MAX_ORDER = 10**6

# rescale window for the running pair (h_{k-1}, h_k)
_BIG = 2.0**512
_SMALL = 2.0**-512


@dataclass(frozen=True)
class HermiteValue:
    """A real number ``mantissa * 2**exponent`` with ``1 <= |mantissa| < 2`` or zero."""

    mantissa: float
    exponent: int

    @classmethod
    def from_parts(cls, value, exponent=0):
        if value == 0.0:
            return cls(0.0, 0)
        m, e = math.frexp(value)
        return cls(2.0 * m, int(e) - 1 + int(exponent))

    def __float__(self):
        if self.mantissa == 0.0:
            return 0.0
        return math.ldexp(self.mantissa, max(min(self.exponent, 2000), -2000))

    def log2_abs(self):
        """log2 |value|; -inf for zero."""
        if self.mantissa == 0.0:
            return -math.inf
        return self.exponent + math.log2(abs(self.mantissa))


@dataclass(frozen=True)
class HermiteSlice:
    """h_0(x), ..., h_{n_max}(x) in scaled form, optionally with derivatives."""

    n_max: int
    x: float
    values: tuple
    derivatives: tuple = None

    def as_floats(self):
        return np.array([float(v) for v in self.values])

    def derivative_floats(self):
        if self.derivatives is None:
            raise ValueError("slice was built without derivatives")
        return np.array([float(v) for v in self.derivatives])


def _check_order(n, max_order):
    if int(n) != n or n < 0:
        raise DomainError(f"order must be a non-negative integer, got {n!r}")
    if n > max_order:
        raise CapacityError(f"order {n} exceeds the configured maximum {max_order}")


@lru_cache(maxsize=8)
def _coefficients(size):
    """Double-double sqrt(2/(k+1)) and sqrt(k/(k+1)) for k < size, as lists."""
    k = np.arange(size, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        a_hi, a_lo = _dd.sqrt(*_dd.div_int(2.0, k + 1.0))
        b_hi, b_lo = _dd.sqrt(*_dd.div_int(k, k + 1.0))
    b_hi[0] = b_lo[0] = 0.0
    a_h, a_l = _dd.split(a_hi)
    return (a_hi.tolist(), a_lo.tolist(), a_h.tolist(), a_l.tolist(),
            b_hi.tolist(), b_lo.tolist())


def _seed(x):
    """pi^{-1/4} e^{-x^2/2} as (hi, lo, exponent) arrays."""
    sq_hi, sq_lo = _dd.two_prod(x, x)
    t_hi, t_lo = _dd.mul(0.5 * sq_hi, 0.5 * sq_lo, *_dd.LOG2E)
    t_hi = np.minimum(t_hi, 2.0**60)
    whole = np.floor(t_hi)
    frac = (t_hi - whole) + t_lo
    hi, lo = _dd.mul(np.exp2(-frac), np.zeros_like(frac), *_dd.PI_M14)
    return hi, lo, -whole.astype(np.int64)


def _recurrence(n_max, x):
    """Rows h_0..h_{n_max} at the points ``x`` (1-D array).

    Returns ``(rows, exps)`` where ``rows[k] * 2**exps[k]`` is h_k(x); each
    ``rows[k]`` is the double-double pair rounded to a double.
    """
    m = x.size
    rows = np.empty((n_max + 1, m))
    exps = np.empty((n_max + 1, m), dtype=np.int64)
    cur_hi, cur_lo, exp = _seed(x)
    prev_hi = np.zeros(m)
    prev_lo = np.zeros(m)
    rows[0] = cur_hi + cur_lo
    exps[0] = exp
    if n_max == 0:
        return rows, exps
    a_hi, a_lo, a_h, a_l, b_hi, b_lo = _coefficients(max(64, 1 << (n_max - 1).bit_length()))
    xh, xl = _dd.split(x)
    for k in range(n_max):
        p, e = _dd.two_prod_split(x, xh, xl, a_hi[k], a_h[k], a_l[k])
        xa_hi, xa_lo = _dd.quick_two_sum(p, e + x * a_lo[k])
        t_hi, t_lo = _dd.mul(xa_hi, xa_lo, cur_hi, cur_lo)
        if k:
            u_hi, u_lo = _dd.mul(prev_hi, prev_lo, b_hi[k], b_lo[k])
            t_hi, t_lo = _dd.add(t_hi, t_lo, -u_hi, -u_lo)
        prev_hi, prev_lo, cur_hi, cur_lo = cur_hi, cur_lo, t_hi, t_lo
        big = np.maximum(np.abs(cur_hi), np.abs(prev_hi))
        off = (big > _BIG) | (big < _SMALL)
        if off.any():
            shift = np.where(off, np.frexp(big)[1], 0)
            cur_hi = np.ldexp(cur_hi, -shift)
            cur_lo = np.ldexp(cur_lo, -shift)
            prev_hi = np.ldexp(prev_hi, -shift)
            prev_lo = np.ldexp(prev_lo, -shift)
            exp = exp + shift
        rows[k + 1] = cur_hi + cur_lo
        exps[k + 1] = exp
    return rows, exps


def _to_float(rows, exps):
    return np.ldexp(rows, np.clip(exps, -2000, 2000).astype(np.int32))


def _as_points(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("evaluation points must be finite")
    return x


def hermite_table(n_max, x, max_order=MAX_ORDER):
    """Array ``H`` of shape ``(n_max+1,) + shape(x)`` with ``H[k] = h_k(x)``."""
    _check_order(n_max, max_order)
    x = _as_points(x)
    rows, exps = _recurrence(int(n_max), x.ravel())
    return _to_float(rows, exps).reshape((int(n_max) + 1,) + x.shape)


def hermite_derivatives(table, x):
    """h_k'(x) = sqrt(2k) h_{k-1}(x) - x h_k(x) for a table from :func:`hermite_table`."""
    x = np.asarray(x, dtype=float)
    d = -x * table
    k = np.sqrt(2.0 * np.arange(1, table.shape[0])).reshape((-1,) + (1,) * x.ndim)
    d[1:] += k * table[:-1]
    return d


def hermite_eval_slice(n_max, x, with_derivatives=False, max_order=MAX_ORDER):
    """All of h_0(x), ..., h_{n_max}(x) from one pass of the recurrence."""
    _check_order(n_max, max_order)
    x = float(_as_points(x))
    n_max = int(n_max)
    rows, exps = _recurrence(n_max, np.array([x]))
    rows, exps = rows[:, 0], exps[:, 0]
    values = tuple(HermiteValue.from_parts(float(r), int(e)) for r, e in zip(rows, exps))
    derivs = None
    if with_derivatives:
        derivs = [HermiteValue.from_parts(-x * float(rows[0]), int(exps[0]))]
        for k in range(1, n_max + 1):
            # express h_{k-1} on the exponent of row k before combining
            below = math.ldexp(float(rows[k - 1]), int(exps[k - 1] - exps[k]))
            d = math.sqrt(2.0 * k) * below - x * float(rows[k])
            derivs.append(HermiteValue.from_parts(d, int(exps[k])))
        derivs = tuple(derivs)
    return HermiteSlice(n_max, x, values, derivs)


def hermite_eval(n, x, max_order=MAX_ORDER):
    """h_n(x) as a float (underflows gracefully to 0 far past the turning point)."""
    return float(hermite_eval_slice(n, x, max_order=max_order).values[-1])


def hermite_zero_value(n, max_order=MAX_ORDER):
    """h_n(0) for even n, h_n'(0) for odd n.

    Uses h_{2p}(0) = (-1)^p pi^{-1/4} sqrt((2p-1)!!/(2p)!!) and
    h'_{2p+1}(0) = sqrt(4p+2) h_{2p}(0), with the double-factorial ratio
    accumulated as a compensated sum of logarithms.
    """
    _check_order(n, max_order)
    p = int(n) // 2
    log_ratio = math.fsum(np.log1p(-0.5 / np.arange(1, p + 1)).tolist()) if p else 0.0
    value = (-1) ** p * math.pi**-0.25 * math.exp(0.5 * log_ratio)
    if n % 2:
        value *= math.sqrt(4 * p + 2)
    return value


def ode_residual(n, x, h_step):
    """Central-difference residual of h'' + (2n+1-x^2) h = 0 at ``x``."""
    if h_step <= 0:
        raise DomainError("h_step must be positive")
    mid = hermite_eval(n, x)
    second = (hermite_eval(n, x - h_step) - 2.0 * mid + hermite_eval(n, x + h_step)) / h_step**2
    return second + (2 * n + 1 - x * x) * mid
