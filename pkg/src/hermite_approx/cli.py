"""Command-line driver.

    hermite-approx <experiment> [--n 10,25,...] [--alpha A] [--T T] [--grid G]
                   [--out DIR] [--format csv|json] [--svg] [--config FILE.json]

Exit codes: 0 success, 2 usage or configuration error, 3 precondition
violation, 4 audit violation, 5 I/O error.
"""
import argparse
import csv
import json
import math
import os
import sys

from . import __version__
from . import experiments as X
from .errors import CapacityError, ConfigError, DomainError
from .expansion import concentration_report, expand, reconstruct
from .signals import parse_signal
from .svg import emit_svg

EXPERIMENTS = ("example1", "example2", "example3", "lemma-audit", "bound-audit", "custom")
CONFIG_KEYS = {"experiment", "n", "alpha", "T", "grid", "out", "format", "svg", "signal",
               "Omega", "configs", "constants"}
THREADS_ENV = "HERMITE_APPROX_THREADS"

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_AUDIT, EXIT_IO = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _parser():
    p = argparse.ArgumentParser(prog="hermite-approx",
                                description="Hermite projection experiments and bound audits.")
    p.add_argument("experiment", nargs="?", choices=EXPERIMENTS)
    p.add_argument("--n", help="comma-separated orders")
    p.add_argument("--alpha", type=float, help="scale factor as written in the examples")
    p.add_argument("--T", type=float, help="half-width of the time window")
    p.add_argument("--Omega", type=float, help="band half-width (custom)")
    p.add_argument("--grid", type=int, help="grid points per axis")
    p.add_argument("--signal", help="signal spec, e.g. indicator:-0.5,0.5 or csv:path (custom)")
    p.add_argument("--out", help="output directory (default out/<experiment>)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--svg", action="store_true", default=None, help="also write SVG plots")
    p.add_argument("--constant", action="append", metavar="KEY=VALUE",
                   help="override a lemma constant (lemma-audit)")
    p.add_argument("--config", help="JSON file with a flat parameter map")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _int_list(v):
    if isinstance(v, str):
        return [int(t) for t in v.split(",") if t.strip()]
    if isinstance(v, (int, float)):
        return [int(v)]
    return [int(t) for t in v]


def resolve(argv):
    """Merge the config file and command-line flags into one parameter map."""
    args = _parser().parse_args(argv)
    params = {}
    if args.config:
        try:
            with open(args.config) as fh:
                params = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {args.config}: {exc}")
        if not isinstance(params, dict):
            raise UsageError("config must be a JSON object")
        unknown = sorted(set(params) - CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for key in ("experiment", "n", "alpha", "T", "Omega", "grid", "signal", "out", "format", "svg"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.constant:
        consts = dict(params.get("constants", {}))
        for item in args.constant:
            k, _, v = item.partition("=")
            consts[k] = float(v)
        params["constants"] = consts
    exp = params.get("experiment")
    if exp not in EXPERIMENTS:
        raise UsageError(f"experiment must be one of {', '.join(EXPERIMENTS)}")
    if "n" in params:
        params["n"] = _int_list(params["n"])
    params.setdefault("format", "csv")
    if params["format"] not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    params.setdefault("svg", False)
    params.setdefault("out", os.path.join("out", exp))
    return params


def _threads():
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}")


def _write_table(rows, out, stem, fmt):
    path = os.path.join(out, f"{stem}.{fmt}")
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        cols = list(rows[0]) if rows else []
        for r in rows:
            cols += [k for k in r if k not in cols]
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _cell(r.get(k, "")) for k in cols})
    return path


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def _print_rows(rows, keys):
    print("  ".join(f"{k:>14}" for k in keys))
    for r in rows:
        print("  ".join(f"{r[k]:>14.6g}" if isinstance(r[k], float) else f"{r[k]!s:>14}" for k in keys))


def _figures(series, params, out):
    files = []
    for s in series:
        files.append(os.path.join(out, f"{s.label}.csv"))
        s.to_csv(files[-1])
        if params["svg"]:
            tag = f"n={s.n}, alpha={s.published_alpha:g}"
            files.append(emit_svg([("f", s.xs, s.f), ("K_n f", s.xs, s.approx)],
                                  os.path.join(out, f"{s.label}.svg"), f"projection, {tag}"))
            files.append(emit_svg([("error", s.xs, s.error)],
                                  os.path.join(out, f"{s.label}_error.svg"), f"f - K_n f, {tag}"))
    rows = [s.summary() for s in series]
    files.append(_write_table(rows, out, "summary", params["format"]))
    _print_rows(rows, ("label", "n", "published_alpha", "l2_error", "max_abs_error"))
    return files, EXIT_OK


def _run(params, out, workers):
    exp = params["experiment"]
    fmt = params["format"]
    if exp == "example1":
        params.setdefault("n", list(X.EXAMPLE1_N))
        params.setdefault("grid", 80)
        params.setdefault("T", 1.0)
        rows = X.run_example1(params["n"], params["grid"], params["T"], workers)
        _print_rows(rows, ("n", "sup_residual", "hs_norm", "theorem_bound"))
        return [_write_table(rows, out, "table", fmt)], EXIT_OK
    if exp == "example2":
        params.setdefault("n", list(X.EXAMPLE2_N))
        params.setdefault("alpha", X.EXAMPLE2_ALPHA)
        series = X.run_example2(params["n"], params["alpha"], workers=workers)
        return _figures(series, params, out)
    if exp == "example3":
        if "configs" in params:
            configs = [(float(a), int(n)) for a, n in params["configs"]]
        elif "n" in params or "alpha" in params:
            alpha = params.get("alpha", math.sqrt(10))
            configs = [(alpha, n) for n in params.get("n", (20, 50))]
        else:
            configs = X.EXAMPLE3_CONFIGS
        params.pop("n", None)
        params.pop("alpha", None)
        params["configs"] = [list(c) for c in configs]
        return _figures(X.run_example3(configs, workers), params, out)
    if exp in ("lemma-audit", "bound-audit"):
        kind = exp.split("-")[0]
        sweep = {}
        if "n" in params:
            sweep["n"] = params["n"]
        if "T" in params:
            sweep["T"] = (params["T"],)
        if "grid" in params and kind == "lemma":
            sweep["grid"] = params["grid"]
        if "signal" in params and kind == "bound":
            sweep["signals"] = (params["signal"],)
        if "alpha" in params and kind == "bound":
            sweep["alpha"] = (params["alpha"],)
        rep = X.run_audits(kind, sweep, params.get("constants"), workers)
        params["_sweep"] = dict(X.DEFAULT_LEMMA_SWEEP if kind == "lemma" else X.DEFAULT_BOUND_SWEEP, **sweep)
        rows = rep.rows()
        files = [_write_table(rows, out, "report", fmt)]
        if rep.skipped:
            files.append(_write_table(rep.skipped, out, "skipped", fmt))
        _print_rows(rows, ("inequality", "ratio", "n", "T"))
        print(f"{rep.cases} cases, {len(rep.skipped)} skipped, "
              f"violations: {', '.join(rep.violations) or 'none'}")
        return files, (EXIT_OK if rep.ok else EXIT_AUDIT)
    return _custom(params, out)


def _custom(params, out):
    if "signal" not in params:
        raise UsageError("custom needs --signal")
    f = parse_signal(params["signal"])
    T = params.get("T", 1.0)
    Omega = params.get("Omega", 2.0)
    scale = X.basis_scale(params.get("alpha", 1.0))
    lo, hi = f.extent
    files, rows = [], []
    for n in params.get("n", (40,)):
        c = expand(f, n, scale)
        files.append(os.path.join(out, f"coeffs_n{n}.csv"))
        c.to_csv(files[-1])
        xs = X.np.linspace(lo - 0.25 * (hi - lo), hi + 0.25 * (hi - lo), X.FIGURE_POINTS)
        approx = reconstruct(c, xs)
        series = X.FigureSeries(f"custom_n{n}", n, params.get("alpha", 1.0), xs, f(xs), approx,
                                X.projection_error(f, n, scale, T, coeffs=c))
        files.append(os.path.join(out, f"custom_n{n}.csv"))
        series.to_csv(files[-1])
        if params["svg"]:
            files.append(emit_svg([("f", xs, series.f), ("K_n f", xs, approx)],
                                  os.path.join(out, f"custom_n{n}.svg"), f"n={n}"))
        rows.append({**series.summary(), "l2_error_window": T})
    rep = concentration_report(f, T, Omega)
    conc = {"T": rep.T, "eps_T": rep.eps_T, "Omega": rep.Omega, "eps_Omega": rep.eps_Omega,
            "l2_norm": rep.l2_norm}
    files.append(_write_table(rows, out, "summary", params["format"]))
    files.append(_write_table([conc], out, "concentration", params["format"]))
    _print_rows(rows, ("label", "n", "l2_error"))
    _print_rows([conc], tuple(conc))
    return files, EXIT_OK


def _manifest(params, out, files, status):
    doc = {"tool": "hermite-approx", "version": __version__, "experiment": params["experiment"],
           "parameters": {k: params[k] for k in sorted(params) if not k.startswith("_")},
           "resolved": {k[1:]: params[k] for k in sorted(params) if k.startswith("_")},
           "outputs": sorted(os.path.basename(f) for f in files), "exit_status": status,
           "alpha_convention": "alpha is the published compression factor; "
                               "basis scale = 1/alpha, c = alpha^2"}
    with open(os.path.join(out, "manifest.json"), "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=list)
        fh.write("\n")


def main(argv=None):
    try:
        params = resolve(sys.argv[1:] if argv is None else argv)
        workers = _threads()
    except UsageError as exc:
        print(f"hermite-approx: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = params["out"]
    try:
        os.makedirs(out, exist_ok=True)
        files, status = _run(params, out, workers)
        _manifest(params, out, files, status)
    except (UsageError, ConfigError) as exc:
        print(f"hermite-approx: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, CapacityError) as exc:
        print(f"hermite-approx: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"hermite-approx: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
