"""Test signals with closed-form norms and Fourier magnitudes.

A signal is ``amplitude * base(x / dilation)`` where ``base`` is one of the
built-in kinds.  Keeping the dilation symbolic makes the scaling operator
delta_b f(x) = b^{-1/2} f(x/b) exact: it only updates two numbers.

Fourier transforms use the unitary convention
f^(w) = (2 pi)^{-1/2} int f(t) e^{-i t w} dt.
"""
import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError
from .hermite import hermite_table

KINDS = ("indicator", "hat", "gaussian", "hermite", "sampled")

# distance past the turning point where h_k^2 has dropped below 1e-32 relative
_HERMITE_MARGIN = 12.0
# exp(-81) ~ 1e-35
_GAUSS_CUTOFF = 9.0


@dataclass(frozen=True, eq=False)
class Signal:
    kind: str
    params: tuple = ()
    amplitude: float = 1.0
    dilation: float = 1.0
    samples: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown signal kind {self.kind!r}")
        if self.dilation <= 0:
            raise DomainError("dilation must be positive")

    # -- base (undilated) description -------------------------------------------
    def _base(self, x):
        k = self.kind
        if k == "indicator":
            a, b = self.params
            return ((x >= a) & (x <= b)).astype(float)
        if k == "hat":
            c, w = self.params
            return np.maximum(1.0 - np.abs(x - c) / w, 0.0)
        if k == "gaussian":
            (s,) = self.params
            return np.exp(-0.5 * (x / s) ** 2)
        if k == "hermite":
            (order,) = self.params
            return hermite_table(order, x)[order]
        xs, vs = self.samples
        return np.interp(x, xs, vs, left=0.0, right=0.0)

    def _base_support(self):
        k = self.kind
        if k == "indicator":
            return tuple(self.params)
        if k == "hat":
            c, w = self.params
            return (c - w, c + w)
        if k == "sampled":
            xs = self.samples[0]
            return (float(xs[0]), float(xs[-1]))
        return None

    def _base_extent(self):
        """Half-width outside which the base is negligible (unbounded kinds)."""
        if self.kind == "gaussian":
            return _GAUSS_CUTOFF * self.params[0]
        return math.sqrt(2 * self.params[0] + 1) + _HERMITE_MARGIN

    def _base_breakpoints(self):
        k = self.kind
        if k == "indicator":
            return tuple(self.params)
        if k == "hat":
            c, w = self.params
            return (c - w, c, c + w)
        if k == "sampled":
            return tuple(self.samples[0])
        return ()

    def _base_energy(self):
        k = self.kind
        if k == "indicator":
            a, b = self.params
            return b - a
        if k == "hat":
            return 2.0 * self.params[1] / 3.0
        if k == "gaussian":
            return self.params[0] * math.sqrt(math.pi)
        if k == "hermite":
            return 1.0
        xs, vs = self.samples
        h = np.diff(xs)
        return float(np.sum(h * (vs[:-1] ** 2 + vs[:-1] * vs[1:] + vs[1:] ** 2)) / 3.0)

    def _base_fourier_abs2(self, w):
        k = self.kind
        if k == "indicator":
            a, b = self.params
            width = b - a
            return width**2 / (2 * math.pi) * np.sinc(w * width / (2 * math.pi)) ** 2
        if k == "hat":
            hw = self.params[1]
            return hw**2 / (2 * math.pi) * np.sinc(w * hw / (2 * math.pi)) ** 4
        if k == "gaussian":
            s = self.params[0]
            return s * s * np.exp(-((s * w) ** 2))
        if k == "hermite":
            order = self.params[0]
            return hermite_table(order, w)[order] ** 2
        raise DomainError("sampled signals have no closed-form transform")

    # -- public, dilated view --------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.amplitude * self._base(x / self.dilation)

    @property
    def support(self):
        """Closed interval carrying the signal, or None when unbounded."""
        s = self._base_support()
        return None if s is None else (s[0] * self.dilation, s[1] * self.dilation)

    @property
    def extent(self):
        """Interval outside which the signal is zero or negligible."""
        s = self.support
        if s is not None:
            return s
        r = self._base_extent() * self.dilation
        return (-r, r)

    @property
    def breakpoints(self):
        return tuple(t * self.dilation for t in self._base_breakpoints())

    @property
    def l2_norm(self):
        return abs(self.amplitude) * math.sqrt(self.dilation * self._base_energy())

    @property
    def frequency(self):
        """Oscillation rate of the signal in x, for quadrature panel sizing."""
        if self.kind == "hermite":
            return math.sqrt(2 * self.params[0] + 1) / self.dilation
        if self.kind == "gaussian":
            # panels of ~1.5 sigma keep 10-node rules at double precision
            return 2.0 / (self.params[0] * self.dilation)
        return 0.0

    @property
    def has_closed_transform(self):
        return self.kind != "sampled"

    @property
    def fast_spectral_decay(self):
        return self.kind in ("gaussian", "hermite")

    def spectral_extent(self):
        """|w| beyond which |f^|^2 is negligible (fast-decaying kinds only)."""
        if self.kind == "gaussian":
            return _GAUSS_CUTOFF / (self.params[0] * self.dilation)
        if self.kind == "hermite":
            return self._base_extent() / self.dilation
        return math.inf

    def spectral_frequency(self):
        """Oscillation rate of |f^(w)|^2 in w, for quadrature panel sizing."""
        k = self.kind
        if k == "indicator":
            return (self.params[1] - self.params[0]) * self.dilation
        if k == "hat":
            return 2.0 * self.params[1] * self.dilation
        if k == "hermite":
            return 2.0 * math.sqrt(2 * self.params[0] + 1) * self.dilation
        if k == "gaussian":
            return 2.0 * self.params[0] * self.dilation
        return 0.0

    def fourier_abs2(self, w):
        """|f^(w)|^2."""
        w = np.asarray(w, dtype=float)
        d = self.dilation
        return self.amplitude**2 * d * d * self._base_fourier_abs2(d * w)

    def dilate(self, beta):
        """delta_beta f, i.e. x -> beta^{-1/2} f(x/beta)."""
        if beta <= 0:
            raise DomainError("dilation factor must be positive")
        return replace(self, amplitude=self.amplitude / math.sqrt(beta), dilation=self.dilation * beta)

    def describe(self):
        d = {"kind": self.kind, "params": list(self.params)}
        if self.amplitude != 1.0:
            d["amplitude"] = self.amplitude
        if self.dilation != 1.0:
            d["dilation"] = self.dilation
        if self.kind == "sampled":
            d["points"] = len(self.samples[0])
        return d


def indicator(a=-0.5, b=0.5):
    if not a < b:
        raise DomainError("indicator needs a < b")
    return Signal("indicator", (float(a), float(b)))


def hat(center=0.0, halfwidth=1.0):
    if halfwidth <= 0:
        raise DomainError("hat needs a positive half-width")
    return Signal("hat", (float(center), float(halfwidth)))


def gaussian(sigma=1.0):
    if sigma <= 0:
        raise DomainError("gaussian needs sigma > 0")
    return Signal("gaussian", (float(sigma),))


def hermite_signal(k):
    if int(k) != k or k < 0:
        raise DomainError("hermite signal needs a non-negative integer order")
    return Signal("hermite", (int(k),))


def sampled(xs, values):
    """Piecewise-linear signal through ``(xs, values)``, zero outside the grid."""
    xs = np.asarray(xs, dtype=float)
    vs = np.asarray(values, dtype=float)
    if xs.ndim != 1 or xs.shape != vs.shape or xs.size < 2:
        raise DomainError("sampled signal needs matching 1-D arrays of length >= 2")
    if not np.all(np.diff(xs) > 0):
        raise DomainError("sample abscissae must be strictly increasing")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(vs))):
        raise DomainError("samples must be finite")
    xs.flags.writeable = False
    vs.flags.writeable = False
    return Signal("sampled", (), samples=(xs, vs))


def load_csv(path):
    """Two-column CSV ``x,value``; a non-numeric first row is treated as a header."""
    xs, vs = [], []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                x, v = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if i == 0:
                    continue
                raise DomainError(f"{path}: bad row {i + 1}: {row!r}")
            xs.append(x)
            vs.append(v)
    return sampled(xs, vs)


def parse_signal(spec):
    """Build a signal from ``kind:arg,arg`` (e.g. ``indicator:-0.5,0.5``, ``csv:data.csv``)."""
    kind, _, rest = spec.partition(":")
    if kind == "csv":
        return load_csv(rest)
    args = [float(a) for a in rest.split(",") if a.strip()]
    builders = {"indicator": indicator, "hat": hat, "gaussian": gaussian,
                "hermite": lambda k=0: hermite_signal(int(k))}
    if kind not in builders:
        raise DomainError(f"unknown signal kind {kind!r}")
    return builders[kind](*args)
