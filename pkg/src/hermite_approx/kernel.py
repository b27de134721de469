"""Christoffel-Darboux kernel k_n(x,y) = sum_{k<=n} h_k(x) h_k(y) and its sinc approximant."""
import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hermite import hermite_derivatives, hermite_table
from .quadrature import NODES_PER_PANEL, gauss_panels, quad_integrate

DIAGONAL_TOL = 1e-6
SINC_SERIES_TOL = 1e-8


def sinc_frequency(n):
    """N = (sqrt(2n+1) + sqrt(2n+3))/2."""
    return 0.5 * (math.sqrt(2 * n + 1) + math.sqrt(2 * n + 3))


def _cd_from_tables(n, hx, hy, x, y):
    """CD quotient on an outer grid given tables of h_0..h_{n+1} at x and y."""
    scale = math.sqrt((n + 1) / 2.0)
    num = np.outer(hx[n + 1], hy[n]) - np.outer(hx[n], hy[n + 1])
    diff = x[:, None] - y[None, :]
    tau = DIAGONAL_TOL * (1.0 + np.maximum(np.abs(x)[:, None], np.abs(y)[None, :]))
    near = np.abs(diff) <= tau
    with np.errstate(divide="ignore", invalid="ignore"):
        out = scale * num / diff
    if near.any():
        i, j = np.nonzero(near)
        m = 0.5 * (x[i] + y[j])
        out[i, j] = _diagonal(n, m)
    return out


def _diagonal(n, m):
    """Limit of the CD quotient on x = y = m."""
    t = hermite_table(n + 1, m)
    d = hermite_derivatives(t, m)
    return math.sqrt((n + 1) / 2.0) * (d[n + 1] * t[n] - d[n] * t[n + 1])


def cd_kernel_matrix(n, xs, ys):
    """k_n(xs[i], ys[j]) by the Christoffel-Darboux formula."""
    if n < 0:
        raise DomainError("n must be non-negative")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    hx = hermite_table(n + 1, xs)
    hy = hx if ys is xs else hermite_table(n + 1, ys)
    return _cd_from_tables(n, hx, hy, xs, ys)


def cd_kernel(n, x, y):
    """k_n(x, y); the derivative form is used within 1e-6 (1+max|.|) of the diagonal."""
    return float(cd_kernel_matrix(n, [x], [y])[0, 0])


def sinc_kernel(N, x, y):
    """(1/pi) sin(N(x-y))/(x-y), vectorized; series form for |x-y| < 1e-8."""
    if N <= 0:
        raise DomainError("N must be positive")
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    small = np.abs(d) < SINC_SERIES_TOL
    safe = np.where(small, 1.0, d)
    out = np.where(small, N / math.pi * (1.0 - (N * d) ** 2 / 6.0), np.sin(N * safe) / (math.pi * safe))
    return float(out) if out.ndim == 0 else out


def _check_residual_domain(n, T):
    if T < 1:
        raise DomainError(f"need T >= 1, got T={T}", bound="T >= 1")
    if n < 2 * T * T:
        raise DomainError(f"need n >= 2T^2 = {2 * T * T:g}", bound="n >= 2*T**2")
    if T < 2 and n < 6:
        raise DomainError("need n >= 6 when T < 2", bound="n >= 6")


def residual_bound(n, T):
    """Sup bound 17 T^2/sqrt(2n+1) on |k_n - sinc| over [-T, T]^2."""
    return 17.0 * T * T / math.sqrt(2 * n + 1)


@dataclass
class KernelGrid:
    n: int
    T: float
    xs: np.ndarray
    ys: np.ndarray
    k_values: np.ndarray
    sinc_values: np.ndarray
    residual: np.ndarray
    N: float
    sup_residual: float
    hs_norm: float = None

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "y", "k", "sinc", "residual"])
            for i, x in enumerate(self.xs):
                for j, y in enumerate(self.ys):
                    w.writerow([repr(float(x)), repr(float(y)), repr(float(self.k_values[i, j])),
                                repr(float(self.sinc_values[i, j])), repr(float(self.residual[i, j]))])


def residual_grid(n, T, grid_points_per_axis=80):
    """k_n, the sinc kernel and their difference on a uniform (endpoint-inclusive) grid of [-T,T]^2."""
    _check_residual_domain(n, T)
    if grid_points_per_axis < 2:
        raise DomainError("need at least 2 grid points per axis")
    xs = np.linspace(-T, T, grid_points_per_axis)
    N = sinc_frequency(n)
    k = cd_kernel_matrix(n, xs, xs)
    s = sinc_kernel(N, xs[:, None], xs[None, :])
    r = k - s
    return KernelGrid(int(n), float(T), xs, xs.copy(), k, s, r, N, float(np.max(np.abs(r))))


def _residual_nodes(n, T, quad_order):
    N = sinc_frequency(n)
    nodes, weights = gauss_panels(-T, T, oscillation_freq=N, order=quad_order)
    R = cd_kernel_matrix(n, nodes, nodes) - sinc_kernel(N, nodes[:, None], nodes[None, :])
    return nodes, weights, R


def residual_hs_norm(n, T, quad_order=NODES_PER_PANEL):
    """Hilbert-Schmidt norm of the residual operator on L^2([-T, T])."""
    _check_residual_domain(n, T)
    _, w, R = _residual_nodes(n, T, quad_order)
    return float(math.sqrt(w @ (R * R) @ w))


def residual_operator_norm(n, T, f, quad_order=NODES_PER_PANEL):
    """|| P_T R_n^T P_T f ||_{L^2}: apply the residual kernel to ``f`` restricted to [-T, T]."""
    _check_residual_domain(n, T)
    x, w, R = _residual_nodes(n, T, quad_order)
    g = R @ (w * f(x))
    return float(math.sqrt(w @ (g * g)))


def kernel_row_mass(n, x):
    """int_R k_n(x,y)^2 dy, which equals k_n(x,x) = sum_k h_k(x)^2 by reproduction."""
    t = hermite_table(n, np.asarray(x, dtype=float))
    out = np.sum(t * t, axis=0)
    return float(out) if out.ndim == 0 else out


def tail_bound(n, T):
    """2/(pi^2 T) + 12 T^2 ln(2n+1)/sqrt(2n+1)."""
    return 2.0 / (math.pi**2 * T) + 12.0 * T * T * math.log(2 * n + 1) / math.sqrt(2 * n + 1)


@dataclass(frozen=True)
class TailReport:
    n: int
    T: float
    x: float
    tail_mass: float
    bound: float


def window_mass(n, x, a, b):
    """int_a^b k_n(x,y)^2 dy by panel Gauss-Legendre resolving the sinc frequency."""
    return float(quad_integrate(lambda y: cd_kernel_matrix(n, [x], y)[0] ** 2, (a, b),
                                oscillation_freq=sinc_frequency(n)))


def tail_mass(n, T, x):
    """Mass of k_n(x, .)^2 outside [-2T, 2T], via row mass minus the window integral."""
    if T < 2:
        raise DomainError(f"need T >= 2, got {T}", bound="T >= 2")
    if n < 2 * T * T:
        raise DomainError(f"need n >= 2T^2 = {2 * T * T:g}", bound="n >= 2*T**2")
    if abs(x) > T:
        raise DomainError(f"need |x| <= T = {T}", bound="|x| <= T")
    mass = kernel_row_mass(n, x) - window_mass(n, x, -2 * T, 2 * T)
    return TailReport(int(n), float(T), float(x), max(mass, 0.0), tail_bound(n, T))
