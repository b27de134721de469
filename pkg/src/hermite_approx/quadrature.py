"""Composite Gauss-Legendre quadrature with oscillation-aware panels."""
import math
from functools import lru_cache

import numpy as np

from .errors import DomainError, IntegrationError

NODES_PER_PANEL = 10
DEFAULT_WIDTH = 1.0


@lru_cache(maxsize=16)
def _reference_rule(order):
    return np.polynomial.legendre.leggauss(order)


def panel_width(oscillation_freq, default_width=DEFAULT_WIDTH):
    if oscillation_freq < 0:
        raise DomainError("oscillation frequency must be non-negative")
    if oscillation_freq == 0:
        return default_width
    return min(default_width, math.pi / oscillation_freq)


def gauss_panels(a, b, oscillation_freq=0.0, breakpoints=(), order=NODES_PER_PANEL,
                 default_width=DEFAULT_WIDTH):
    """Nodes and weights of the composite rule on ``[a, b]``.

    Each piece between consecutive breakpoints is cut into equal panels no
    wider than ``min(default_width, pi/oscillation_freq)``.
    """
    if not a < b:
        raise DomainError(f"empty interval ({a}, {b})")
    width = panel_width(oscillation_freq, default_width)
    cuts = sorted({a, b, *(float(t) for t in breakpoints if a < t < b)})
    edges = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        m = max(1, math.ceil((hi - lo) / width - 1e-12))
        edges.append(np.linspace(lo, hi, m + 1)[:-1])
    edges = np.append(np.concatenate(edges), b)
    t, w = _reference_rule(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * t).ravel()
    weights = (half[:, None] * w).ravel()
    return nodes, weights


def quad_integrate(integrand, interval, oscillation_freq=0.0, breakpoints=(),
                   order=NODES_PER_PANEL):
    """Integrate a vectorized ``integrand`` over ``interval``.

    The integrand receives the 1-D node array and may return an array whose
    last axis runs over the nodes; the result then keeps the leading axes.
    """
    a, b = interval
    nodes, weights = gauss_panels(a, b, oscillation_freq, breakpoints, order)
    values = np.asarray(integrand(nodes), dtype=float)
    if values.ndim == 0:
        values = np.full(nodes.shape, float(values))
    if not np.all(np.isfinite(values)):
        bad = np.nonzero(~np.isfinite(np.atleast_1d(values)))[-1][0]
        raise IntegrationError(f"non-finite integrand at x={nodes[bad]!r}", nodes[bad])
    return values @ weights
