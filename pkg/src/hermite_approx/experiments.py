"""Experiment runners: the kernel residual table, projection figures and audits.

Convention for the figure experiments: the published examples describe the
scaled basis as a compression, alpha^{1/2} h_k(alpha x), so a published
``alpha`` corresponds to the library scale ``1/alpha`` in
h_k^s(x) = s^{-1/2} h_k(x/s).  Runners take the published value, convert it
with :func:`basis_scale`, and record both (plus c = alpha^2) in metadata.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds as B
from .errors import ConfigError, DomainError
from .expansion import (band_concentration, expand, projection_error, reconstruct,
                        time_concentration)
from .kernel import residual_bound, residual_grid, residual_hs_norm
from .signals import hat, indicator, parse_signal
from .wkb import verify_phase_lemma

FIGURE_X = (-1.5, 1.5)
FIGURE_POINTS = 2001
L2_WINDOW = 1.0

EXAMPLE1_N = (10, 25, 50, 75, 100)
EXAMPLE2_N = (40, 80)
EXAMPLE2_ALPHA = 10.0
EXAMPLE3_CONFIGS = ((math.sqrt(10), 20), (math.sqrt(10), 50), (math.sqrt(50), 20), (math.sqrt(50), 50))


def basis_scale(published_alpha):
    """Library scale s for a published compression factor alpha (s = 1/alpha)."""
    if not published_alpha > 0:
        raise DomainError("alpha must be positive")
    return 1.0 / published_alpha


def _map(fn, items, workers):
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- kernel residual table -------------------------------------------------------

def run_example1(n_list=EXAMPLE1_N, grid_per_axis=80, T=1.0, workers=1):
    """Rows (n, sup_residual, hs_norm, theorem_bound) for the CD-vs-sinc residual on [-T,T]^2."""
    if not n_list:
        raise ConfigError("empty n list")

    def row(n):
        g = residual_grid(n, T, grid_per_axis)
        return {"n": int(n), "sup_residual": g.sup_residual, "hs_norm": residual_hs_norm(n, T),
                "theorem_bound": residual_bound(n, T)}

    return _map(row, n_list, workers)


# -- projection figures ------------------------------------------------------------

@dataclass
class FigureSeries:
    label: str
    n: int
    published_alpha: float
    xs: np.ndarray
    f: np.ndarray
    approx: np.ndarray
    l2_error: float
    meta: dict = field(default_factory=dict)

    @property
    def error(self):
        return self.f - self.approx

    @property
    def basis_scale(self):
        return basis_scale(self.published_alpha)

    def summary(self):
        return {"label": self.label, "n": self.n, "published_alpha": self.published_alpha,
                "basis_scale": self.basis_scale, "c": self.published_alpha**2,
                "l2_error_window": L2_WINDOW, "l2_error": self.l2_error,
                "max_abs_error": float(np.max(np.abs(self.error)))}

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("x,f,approx,error\n")
            for x, f, a, e in zip(self.xs, self.f, self.approx, self.error):
                fh.write(f"{x!r},{f!r},{a!r},{e!r}\n")


def projection_series(signal, n, published_alpha, label, points=FIGURE_POINTS):
    s = basis_scale(published_alpha)
    c = expand(signal, n, s)
    xs = np.linspace(*FIGURE_X, points)
    err = projection_error(signal, n, s, L2_WINDOW, coeffs=c)
    return FigureSeries(label, int(n), float(published_alpha), xs, signal(xs), reconstruct(c, xs), err,
                        {"signal": signal.describe(), "quad": c.quad_meta})


def run_example2(n_list=EXAMPLE2_N, alpha=EXAMPLE2_ALPHA, include_unscaled=True, workers=1):
    """Indicator of [-1/2,1/2] projected at each n with scale alpha, plus alpha = 1."""
    if not n_list:
        raise ConfigError("empty n list")
    f = indicator(-0.5, 0.5)
    jobs = [(n, alpha) for n in n_list]
    if include_unscaled and alpha != 1.0:
        jobs += [(n, 1.0) for n in n_list]
    return _map(lambda j: projection_series(f, j[0], j[1], f"indicator_n{j[0]}_alpha{j[1]:g}"),
                jobs, workers)


def run_example3(configs=EXAMPLE3_CONFIGS, workers=1):
    """Hat function (1-|x|)_+ projected for each (alpha, n)."""
    if not configs:
        raise ConfigError("empty config list")
    g = hat(0.0, 1.0)
    return _map(lambda j: projection_series(g, j[1], j[0], f"hat_n{j[1]}_c{j[0] ** 2:g}"),
                configs, workers)


# -- audits ------------------------------------------------------------------------------

DEFAULT_LEMMA_SWEEP = {"n": (50, 100, 200, 400), "T": (2.0,), "grid": 64}
DEFAULT_BOUND_SWEEP = {
    "signals": ("indicator:-0.5,0.5", "hat:0,1", "gaussian:1", "hermite:3"),
    "n": (20, 40, 80, 160),
    "T": (1.0, 2.0, 4.0),
    "alpha": (0.5, 1.0, 2.0),
    "T0": 2.0,
    "Omega0": 2.0,
}


@dataclass
class AuditReport:
    kind: str
    worst: dict
    skipped: list
    cases: int

    @property
    def violations(self):
        return sorted(k for k, v in self.worst.items() if v["ratio"] > 1.0)

    @property
    def ok(self):
        return not self.violations

    def rows(self):
        return [{"inequality": k, **v} for k, v in sorted(self.worst.items())]


def _keep_worst(worst, key, ratio, where):
    if key not in worst or ratio > worst[key]["ratio"]:
        worst[key] = {"ratio": float(ratio), **where}


def run_audits(kind, sweep=None, constants=None, workers=1):
    """Worst measured/stated ratios over a sweep.  ``constants`` overrides lemma constants."""
    if kind == "lemma":
        return _lemma_audit(dict(DEFAULT_LEMMA_SWEEP, **(sweep or {})), constants, workers)
    if kind == "bound":
        return _bound_audit(dict(DEFAULT_BOUND_SWEEP, **(sweep or {})), workers)
    raise ConfigError(f"unknown audit kind {kind!r}")


def _lemma_audit(sweep, constants, workers):
    cells, skipped = [], []
    for n in sweep["n"]:
        for T in sweep["T"]:
            lam = math.sqrt(2 * n + 1)
            if T < 2 or T > lam / 2:
                skipped.append({"n": n, "T": T, "reason": "need 2 <= T <= sqrt(2n+1)/2"})
            else:
                cells.append((n, T))
    if not cells:
        raise ConfigError("lemma sweep is empty after filtering preconditions")
    reports = _map(lambda c: verify_phase_lemma(c[0], c[1], sweep["grid"], constants), cells, workers)
    worst = {}
    for rep in reports:
        for key, ratio in rep.worst_ratios.items():
            x, y = rep.locations[key]
            _keep_worst(worst, key, ratio, {"n": rep.n, "T": rep.T, "x": x, "y": y})
    return AuditReport("lemma", worst, skipped, len(cells))


def bound_checks(signal, n, T, alphas=(), T0=2.0, Omega0=2.0, name=""):
    """Measured error against every bound whose hypotheses hold.

    Returns ``(checks, skipped)`` where each check is a dict with the
    measured value, the bound times ||f||, and their ratio.
    """
    norm = signal.l2_norm
    eps_T0 = time_concentration(signal, T0)
    eps_O0 = band_concentration(signal, Omega0)
    checks, skipped = [], []
    where = {"signal": name, "n": n, "T": T}

    def attempt(label, fn, measured, **kw):
        try:
            bound = fn(B.BoundInput(n=n, T=T, T0=T0, Omega0=Omega0, **kw)) * norm
        except DomainError as exc:
            skipped.append({**where, "bound": label, "reason": str(exc)})
            return
        checks.append({**where, "bound": label, "measured": measured, "bound_value": bound,
                       "ratio": measured / bound if bound > 0 else math.inf})

    inside = projection_error(signal, n, 1.0, T)
    attempt("local", B.local_projection_bound, inside, eps_T=eps_T0, eps_Omega=eps_O0)
    if n >= 2 * T * T and T >= 1 and (T >= 2 or n >= 6):
        attempt("local-hs", B.local_projection_bound_hs, inside,
                eps_T=time_concentration(signal, T), eps_Omega=eps_O0, hs_norm=residual_hs_norm(n, T))
    else:
        skipped.append({**where, "bound": "local-hs", "reason": "residual norm needs n >= 2T^2"})
    if T >= 2 * T0:
        attempt("global", B.global_projection_bound,
                projection_error(signal, n, 1.0, T, region="outside"), eps_T=eps_T0, eps_Omega=eps_O0)
    for alpha in alphas:
        # c/alpha = Omega0 unless that breaks c >= 2/alpha
        c = max(2.0 / alpha, Omega0 * alpha)
        attempt("scaled", B.scaled_projection_bound, projection_error(signal, n, alpha, T),
                eps_T=time_concentration(signal, T), eps_Omega=band_concentration(signal, c / alpha),
                alpha=alpha, c=c)
    return checks, skipped


def _bound_audit(sweep, workers):
    cells = [(s, n, T) for s in sweep["signals"] for n in sweep["n"] for T in sweep["T"]]

    def run(cell):
        s, n, T = cell
        return bound_checks(parse_signal(s), n, T, sweep["alpha"], sweep["T0"], sweep["Omega0"], name=s)

    results = _map(run, cells, workers)
    worst, skipped, count = {}, [], 0
    for checks, skip in results:
        skipped += skip
        for ch in checks:
            count += 1
            _keep_worst(worst, ch["bound"], ch["ratio"],
                        {k: ch[k] for k in ("signal", "n", "T", "measured", "bound_value")})
    if not count:
        raise ConfigError("bound sweep is empty after filtering preconditions")
    return AuditReport("bound", worst, skipped, count)

