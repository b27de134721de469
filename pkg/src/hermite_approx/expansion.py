"""Expansions in the scaled Hermite basis and time/band concentration of signals.

The scaled basis is h_k^a(x) = a^{-1/2} h_k(x/a).  Scaling is applied as a
change of coordinates inside the quadrature, never by resampling data.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .hermite import hermite_table
from .quadrature import NODES_PER_PANEL, panel_width, quad_integrate
from .signals import _HERMITE_MARGIN, Signal

# sampled-signal DFT parameters
DFT_MIN_LENGTH = 2**14
DFT_TIME_POINTS = 2**15
DFT_SPECTRAL_OVERSAMPLE = 32


@dataclass
class CoefficientVector:
    alpha: float
    n: int
    coeffs: np.ndarray
    quad_meta: dict = field(default_factory=dict)

    def to_csv(self, path):
        meta = {"n": self.n, "alpha": repr(float(self.alpha)), **self.quad_meta}
        head = ",".join(f"{k}={_meta_str(v)}" for k, v in meta.items())
        with open(path, "w", newline="") as fh:
            fh.write(f"# {head}\n")
            fh.write("k,coeff\n")
            for k, c in enumerate(self.coeffs):
                fh.write(f"{k},{float(c)!r}\n")

    @classmethod
    def from_csv(cls, path):
        meta, coeffs = {}, []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line.startswith("#"):
                    for item in line[1:].split(","):
                        key, _, val = item.strip().partition("=")
                        meta[key] = val
                elif line and line != "k,coeff":
                    k, c = line.split(",")
                    if int(k) != len(coeffs):
                        raise DomainError(f"{path}: coefficient rows out of order at k={k}")
                    coeffs.append(float(c))
        n = int(meta.pop("n"))
        alpha = float(meta.pop("alpha"))
        if len(coeffs) != n + 1:
            raise DomainError(f"{path}: expected {n + 1} coefficients, found {len(coeffs)}")
        return cls(alpha, n, np.array(coeffs), {k: _meta_value(v) for k, v in meta.items()})


def _meta_str(v):
    if isinstance(v, (tuple, list)):
        return ";".join(repr(float(t)) for t in v)
    return str(v)


def _meta_value(s):
    if ";" in s:
        return tuple(float(t) for t in s.split(";"))
    for cast in (int, float):
        try:
            return cast(s)
        except ValueError:
            pass
    return s


def basis_reach(n, alpha):
    """|x| beyond which every h_k^alpha with k <= n is below ~1e-30."""
    return alpha * (math.sqrt(2 * n + 1) + _HERMITE_MARGIN)


def _check(n, alpha):
    if int(n) != n or n < 0:
        raise DomainError("n must be a non-negative integer")
    if not alpha > 0:
        raise DomainError("alpha must be positive")


def _check_sampled(f: Signal):
    if f.kind != "sampled":
        return
    vs = f.samples[1]
    tol = 1e-12 * max(1.0, float(np.max(np.abs(vs))))
    if abs(vs[0]) > tol or abs(vs[-1]) > tol:
        raise DomainError("sampled signal does not vanish at the ends of its grid; "
                          "its support exceeds the sampled range")


def _basis(n, alpha, x):
    return hermite_table(n, x / alpha) / math.sqrt(alpha)


def expand(f: Signal, n: int, alpha: float = 1.0) -> CoefficientVector:
    """Coefficients <f, h_k^alpha> for k = 0..n."""
    _check(n, alpha)
    _check_sampled(f)
    n = int(n)
    lo, hi = f.extent
    r = basis_reach(n, alpha)
    lo, hi = max(lo, -r), min(hi, r)
    freq = math.sqrt(2 * n + 1) / alpha + f.frequency
    meta = {"panel_width": panel_width(freq), "nodes_per_panel": NODES_PER_PANEL,
            "interval": (lo, hi)}
    if not lo < hi:
        return CoefficientVector(float(alpha), n, np.zeros(n + 1), meta)
    coeffs = quad_integrate(lambda x: _basis(n, alpha, x) * f(x), (lo, hi),
                            oscillation_freq=freq, breakpoints=f.breakpoints)
    return CoefficientVector(float(alpha), n, np.asarray(coeffs), meta)


def reconstruct(c: CoefficientVector, xs):
    """(K_n^alpha f)(xs) = sum_k c_k h_k^alpha(xs)."""
    xs = np.asarray(xs, dtype=float)
    out = np.tensordot(c.coeffs, _basis(c.n, c.alpha, xs), axes=1)
    return float(out) if out.ndim == 0 else out


def _squared_error(f, c, intervals, freq):
    total = 0.0
    for a, b in intervals:
        if a < b:
            total += quad_integrate(lambda x: (f(x) - reconstruct(c, x)) ** 2, (a, b),
                                    oscillation_freq=freq, breakpoints=f.breakpoints)
    return total


def projection_error(f: Signal, n: int, alpha: float, T: float, region="inside", coeffs=None):
    """L^2 norm of f - K_n^alpha f over [-T, T] (``region="inside"``) or its complement."""
    if not T > 0:
        raise DomainError("T must be positive")
    c = coeffs if coeffs is not None else expand(f, n, alpha)
    freq = math.sqrt(2 * c.n + 1) / c.alpha + f.frequency
    if region == "inside":
        intervals = [(-T, T)]
    elif region == "outside":
        lo, hi = f.extent
        reach = max(basis_reach(c.n, c.alpha), -lo, hi)
        intervals = [(-reach, -T), (T, reach)]
    else:
        raise DomainError(f"region must be 'inside' or 'outside', got {region!r}")
    return math.sqrt(max(_squared_error(f, c, intervals, freq), 0.0))


def _nonzero_energy(f):
    e = f.l2_norm**2
    if not e > 0:
        raise DomainError("signal has zero energy")
    return e


def time_concentration(f: Signal, T: float) -> float:
    """eps_T with eps_T^2 = int_{|t|>T} |f|^2 / ||f||^2."""
    if not T > 0:
        raise DomainError("T must be positive")
    energy = _nonzero_energy(f)
    lo, hi = f.extent
    out = 0.0
    for a, b in ((lo, min(-T, hi)), (max(T, lo), hi)):
        if a < b:
            out += quad_integrate(lambda x: f(x) ** 2, (a, b), oscillation_freq=f.frequency,
                                  breakpoints=f.breakpoints)
    return math.sqrt(min(max(out / energy, 0.0), 1.0))


def band_concentration(f: Signal, Omega: float) -> float:
    """eps_Omega with eps_Omega^2 = int_{|w|>Omega} |f^(w)|^2 / ||f||^2."""
    if not Omega > 0:
        raise DomainError("Omega must be positive")
    energy = _nonzero_energy(f)
    if f.kind == "sampled":
        ratio = 1.0 - _sampled_band_energy(f, Omega) / energy
    elif f.fast_spectral_decay:
        W = f.spectral_extent()
        out = 0.0
        if Omega < W:
            out = 2.0 * quad_integrate(f.fourier_abs2, (Omega, W),
                                       oscillation_freq=f.spectral_frequency())
        ratio = out / energy
    else:
        inner = 2.0 * quad_integrate(f.fourier_abs2, (0.0, Omega),
                                     oscillation_freq=f.spectral_frequency())
        ratio = 1.0 - inner / energy
    return math.sqrt(min(max(ratio, 0.0), 1.0))


def _sampled_band_energy(f: Signal, Omega):
    """int_{-Omega}^{Omega} |f^|^2 for a sampled signal by FFT.

    The signal is resampled on a uniform grid (spacing <= pi/(4 Omega)) and
    zero padded to at least 32 times its support.  The FFT of the grid
    samples times sinc^2(w dx / 2) is the exact transform of the grid's
    linear interpolant.  The padding is tuned so that Omega falls on an even
    frequency index, and the band integral uses Simpson's rule.
    """
    a, b = f.support
    L = b - a
    dx_max = min(math.pi / (4.0 * Omega), L / DFT_TIME_POINTS)
    dw_max = 2.0 * math.pi / (DFT_SPECTRAL_OVERSAMPLE * L)
    K = max(2, math.ceil(Omega / dw_max))
    K += K % 2
    dw = Omega / K
    M = max(DFT_MIN_LENGTH, 1 << math.ceil(math.log2(2.0 * math.pi / (dw * dx_max))))
    dx = 2.0 * math.pi / (M * dw)
    x = a + dx * np.arange(M)
    F = np.fft.rfft(f(x))[: K + 1] * dx / math.sqrt(2.0 * math.pi)
    w = dw * np.arange(K + 1)
    P = np.abs(F) ** 2 * np.sinc(w * dx / (2.0 * math.pi)) ** 4
    simpson = np.ones(K + 1)
    simpson[1:-1:2] = 4.0
    simpson[2:-1:2] = 2.0
    return 2.0 * dw / 3.0 * float(simpson @ P)


@dataclass(frozen=True)
class ConcentrationReport:
    T: float
    eps_T: float
    Omega: float
    eps_Omega: float
    l2_norm: float


def concentration_report(f: Signal, T: float, Omega: float) -> ConcentrationReport:
    return ConcentrationReport(float(T), time_concentration(f, T), float(Omega),
                               band_concentration(f, Omega), f.l2_norm)


def sobolev_band_bound(hs_norm, l2_norm, s, Omega):
    """Band-concentration bound ||f||_{H^s} / ((1+Omega)^s ||f||)."""
    if not (hs_norm > 0 and l2_norm > 0 and s > 0 and Omega >= 0):
        raise DomainError("need hs_norm, l2_norm, s > 0 and Omega >= 0")
    return hs_norm / ((1.0 + Omega) ** s * l2_norm)


def sobolev_norm(f: Signal, s: float, cutoff=None):
    """||f||_{H^s} = (int (1+|w|)^{2s} |f^(w)|^2 dw)^{1/2} from the closed-form transform.

    Kinds with algebraic spectral decay get an analytic tail estimate past
    ``cutoff`` using the mean value of the oscillating factor.
    """
    if not f.has_closed_transform:
        raise DomainError("sobolev_norm needs a closed-form transform")
    W = cutoff if cutoff is not None else (f.spectral_extent() if f.fast_spectral_decay else 1e5)
    body = 2.0 * quad_integrate(lambda w: (1.0 + w) ** (2 * s) * f.fourier_abs2(w), (0.0, W),
                                oscillation_freq=f.spectral_frequency())
    tail = 0.0
    d, A2 = f.dilation, f.amplitude**2
    if f.kind == "indicator":
        # |f^|^2 ~ (2/pi) sin^2(...)/w^2 with mean 1/pi w^-2
        p, coef = 2.0, A2 / math.pi
    elif f.kind == "hat":
        # 8 sin^4(...)/(pi hw^2 d^2 w^4), mean of sin^4 is 3/8
        p, coef = 4.0, A2 * 3.0 / (math.pi * (f.params[1] * d) ** 2)
    else:
        p = None
    if p is not None:
        q = p - 2 * s
        if q <= 1:
            raise DomainError(f"f is not in H^{s}")
        # (1+w)^{2s} w^{-p} <= w^{-q} (1+1/W)^{2s} for w >= W
        tail = 2.0 * coef * (1.0 + 1.0 / W) ** (2 * s) * W ** (1 - q) / (q - 1)
    return math.sqrt(body + tail)
