"""Double-double arithmetic on numpy arrays.

A value is carried as an unevaluated sum ``hi + lo`` with ``|lo| <= ulp(hi)/2``.
Only the handful of operations the Hermite recurrence needs are provided.
"""
import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def two_prod_split(a, ah, al, b, bh, bl):
    """``two_prod`` with both operands already split."""
    p = a * b
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def mul(ahi, alo, bhi, blo):
    p, e = two_prod(ahi, bhi)
    e = e + (ahi * blo + alo * bhi)
    return quick_two_sum(p, e)


def add(ahi, alo, bhi, blo):
    s1, s2 = two_sum(ahi, bhi)
    t1, t2 = two_sum(alo, blo)
    s2 = s2 + t1
    s1, s2 = quick_two_sum(s1, s2)
    s2 = s2 + t2
    return quick_two_sum(s1, s2)


def div_int(num, den):
    """``num / den`` for exactly representable integers, as (hi, lo)."""
    hi = num / den
    p, e = two_prod(hi, den)
    return hi, ((num - p) - e) / den


def sqrt(hi, lo):
    s = np.sqrt(hi)
    p, e = two_prod(s, s)
    corr = ((hi - p) - e + lo) / (2.0 * s)
    return quick_two_sum(s, corr)


# log2(e) and pi**(-1/4) to double-double accuracy
LOG2E = (1.4426950408889634, 2.0355273740931033e-17)
PI_M14 = (0.7511255444649425, -2.4402481796105665e-17)
