"""Command-line front end: ``pieprox {prox,irl1,region,errors,taubar}``.

Every command prints one record to stdout, either CSV (a ``# meta:`` JSON
comment line, a header row, then data rows) or a single JSON object
``{"meta": ..., "rows": ...}``. Reals are written with 17 significant digits.

Exit codes: 0 success, 2 usage error, 3 oracle disagreement.
"""
import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from . import __version__
from .irl1 import (
    adaptive_init,
    deviation_region,
    error_bounds,
    irl1_run,
    irl1_step,
    iterate_errors,
    predict_limit,
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
)
from .oracle import brute_force_prox, brute_force_tau_bar
from .prox import Params, Regime, prox, tau_bar

EXIT_USAGE = 2
EXIT_ORACLE = 3
PROX_ORACLE_TOL = 1e-5
TAUBAR_ORACLE_TOL = 1e-6
IN_PROX_TOL = 1e-7

SCHEMAS = ("PROX", "TRAJECTORY", "REGION", "SWEEP", "ERRORS")


@dataclass
class OutputRecord:
    schema: str
    rows: list
    meta: dict = field(default_factory=dict)


class UsageError(Exception):
    pass


# -- serialization ---------------------------------------------------------

def fmt_real(x):
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _json_value(v):
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        return fmt_real(v) if math.isfinite(v) else json.dumps(fmt_real(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(str(v))


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_real(v)
    return str(v)


def render_json(rec):
    body = {"meta": dict(rec.meta, schema=rec.schema), "rows": rec.rows}
    return _json_value(body) + "\n"


def render_csv(rec):
    buf = io.StringIO()
    buf.write("# meta: " + _json_value(dict(rec.meta, schema=rec.schema)) + "\n")
    columns = []
    for row in rec.rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rec.rows:
        w.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def render(rec, fmt):
    return render_json(rec) if fmt == "json" else render_csv(rec)


# -- flag parsing ------------------------------------------------------------

def parse_grid(text):
    """``lo:hi:n`` -> ``n`` evenly spaced values including both ends."""
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like lo:hi:n, got {text!r}")
    if n < 1 or (n > 1 and not hi > lo) or not (math.isfinite(lo) and math.isfinite(hi)):
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}")
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def parse_int_list(text):
    try:
        out = sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")
    if not out or out[0] < 1:
        raise argparse.ArgumentTypeError("k values must be >= 1")
    return out


def positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text!r}")
    return v


def finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return v


def nonneg_float(text):
    v = finite_float(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return v


def _meta(args, argv):
    return {
        "lambda": args.lam,
        "sigma": args.sigma,
        "regime": Params(args.lam, args.sigma).regime.value,
        "version": __version__,
        "command": " ".join(["pieprox"] + list(argv)),
    }


def _thresholds(p):
    return tau_bar(p) if p.regime is Regime.HARD else None


# -- commands ------------------------------------------------------------------

def cmd_prox(args, argv):
    p = Params(args.lam, args.sigma)
    th = _thresholds(p)
    res = prox(args.tau, p, th)
    meta = _meta(args, argv)
    meta.update(
        tau=args.tau,
        at_tie=res.at_tie,
        lower=p.lower,
        tau_bar=th.tau_bar if th else None,
        upper=p.upper,
    )
    rows = [{"index": i, "point": x} for i, x in enumerate(res.points)]
    status = 0
    if args.oracle:
        ref = brute_force_prox(args.tau, p)
        same_card = len(ref) == len(res.points)
        disc = max(abs(a - b) for a, b in zip(res.points, ref)) if same_card else math.inf
        for row, r in zip(rows, ref):
            row["oracle_point"] = r
        meta.update(oracle_points=list(ref), max_discrepancy=disc)
        if not disc <= PROX_ORACLE_TOL:
            print(f"oracle disagreement: prox={list(res.points)} oracle={ref}", file=sys.stderr)
            status = EXIT_ORACLE
    return OutputRecord("PROX", rows, meta), status


def cmd_irl1(args, argv):
    p = Params(args.lam, args.sigma)
    if args.tau <= 0:
        raise UsageError("--tau must be > 0 for irl1")
    th = _thresholds(p)
    if args.init == "adaptive":
        x0 = adaptive_init(args.tau, p, th)
    elif args.x0 is None:
        raise UsageError("give --x0 or --init adaptive")
    else:
        x0 = args.x0
    tr = irl1_run(x0, args.tau, p, tol=args.tol, max_iter=args.max_iter)
    pred = predict_limit(x0, args.tau, p, th)
    res = prox(args.tau, p, th)
    meta = _meta(args, argv)
    meta.update(
        tau=args.tau,
        x0=x0,
        init=args.init or "fixed",
        limit=tr.limit,
        converged=tr.converged,
        iterations=tr.iterations,
        hit_zero_at=tr.hit_zero_at,
        predicted_limit=pred.value,
        predicted_kind=pred.kind.value,
        prox_points=list(res.points),
        in_prox_set=res.contains(tr.limit, IN_PROX_TOL),
    )
    if not tr.converged:
        print(f"irl1 did not converge within {args.max_iter} iterations", file=sys.stderr)
    rows = [{"k": k, "x": x} for k, x in zip(tr.indices, tr.iterates)]
    return OutputRecord("TRAJECTORY", rows, meta), 0


def cmd_region(args, argv):
    p = Params(args.lam, args.sigma)
    if args.x0 is not None:
        x0s = [args.x0]
    elif args.x0_grid is not None:
        x0s = args.x0_grid
        if x0s[0] < 0:
            raise UsageError("--x0-grid values must be >= 0")
    else:
        raise UsageError("give --x0 or --x0-grid")
    th = _thresholds(p)
    rows = []
    marks = None
    for x0 in sorted(x0s):
        rep = deviation_region(x0, p, th)
        marks = rep.landmarks
        if not rep.deviation_intervals:
            rows.append({"x0": x0, "case": rep.case, "lo": None, "hi": None,
                         "lo_closed": None, "hi_closed": None})
        for iv in rep.deviation_intervals:
            rows.append({"x0": x0, "case": rep.case, "lo": iv.lo, "hi": iv.hi,
                         "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed})
    meta = _meta(args, argv)
    meta["landmarks"] = marks
    schema = "SWEEP" if args.x0_grid is not None and args.x0 is None else "REGION"
    return OutputRecord(schema, rows, meta), 0


def _errors_rows(tau, ks, p, th):
    x0 = adaptive_init(tau, p, th)
    k_max = max(ks)
    xs = {0: x0}
    x = x0
    for k in range(1, k_max + 1):
        x = irl1_step(x, tau, p)
        xs[k] = x
    res = prox(tau, p, th)
    bounded = x0 > 0.0
    errs = iterate_errors(x0, tau, p, k_max) if bounded else None
    rows = []
    for k in ks:
        xk = xs[k]
        target = res.nearest(xk)
        row = {"tau": tau, "k": k, "x0": x0, "x_k": xk, "prox": target}
        if bounded:
            lo, hi = error_bounds(k, tau, p, th)
            row.update(error=errs[k], lower=lo, upper=hi)
        else:
            row.update(error=xk - target, lower=None, upper=None)
        rows.append(row)
    return rows


def cmd_errors(args, argv):
    p = Params(args.lam, args.sigma)
    taus = args.tau_grid
    if taus[0] <= 0:
        raise UsageError("--tau-grid must be strictly positive (e.g. 0.01:1.5:150)")
    th = _thresholds(p)
    rows = []
    for tau in taus:
        rows.extend(_errors_rows(tau, args.k, p, th))
    meta = _meta(args, argv)
    meta.update(k=args.k, init="adaptive")
    return OutputRecord("ERRORS", rows, meta), 0


def cmd_taubar(args, argv):
    p = Params(args.lam, args.sigma)
    if p.regime is not Regime.HARD:
        raise UsageError(
            f"tau_bar needs lambda > sigma^2 (got {args.lam} <= {args.sigma ** 2}); "
            f"for lambda <= sigma^2 the prox has the single threshold lambda/sigma "
            f"= {p.upper:.17g} and sigma(1+ln(lambda/sigma^2)) <= tau_bar <= lambda/sigma "
            f"collapses")
    th = tau_bar(p)
    row = {"x_star": th.x_star, "tau_bar": th.tau_bar, "lower": th.lower,
           "upper": th.upper, "residual": th.residual}
    status = 0
    if args.oracle:
        ref = brute_force_tau_bar(p)
        row.update(oracle_tau_bar=ref, discrepancy=abs(ref - th.tau_bar))
        if not abs(ref - th.tau_bar) <= TAUBAR_ORACLE_TOL:
            print(f"oracle disagreement: tau_bar={th.tau_bar} oracle={ref}", file=sys.stderr)
            status = EXIT_ORACLE
    return OutputRecord("PROX", [row], _meta(args, argv)), status


# -- entry point ---------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="pieprox",
        description="Proximal operator of the PiE penalty and IRL1 diagnostics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lambda", dest="lam", type=positive_float, required=True)
        sp.add_argument("--sigma", type=positive_float, required=True)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("prox", help="evaluate the prox set at one tau")
    common(sp)
    sp.add_argument("--tau", type=finite_float, required=True)
    sp.add_argument("--oracle", action="store_true", help="cross-check by grid search")
    sp.set_defaults(func=cmd_prox)

    sp = sub.add_parser("irl1", help="run IRL1 and compare with the predicted limit")
    common(sp)
    sp.add_argument("--tau", type=finite_float, required=True)
    sp.add_argument("--x0", type=nonneg_float)
    sp.add_argument("--init", choices=("adaptive",))
    sp.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)
    sp.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    sp.set_defaults(func=cmd_irl1)

    sp = sub.add_parser("region", help="tau intervals where IRL1 misses the prox")
    common(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--x0", type=nonneg_float)
    g.add_argument("--x0-grid", type=parse_grid, metavar="LO:HI:N")
    sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("errors", help="error of x^(k) under the adaptive start")
    common(sp)
    sp.add_argument("--tau-grid", type=parse_grid, required=True, metavar="LO:HI:N")
    sp.add_argument("--k", type=parse_int_list, default=[1, 2, 3, 4], metavar="K1,K2,...")
    sp.set_defaults(func=cmd_errors)

    sp = sub.add_parser("taubar", help="jump threshold for lambda > sigma^2")
    common(sp)
    sp.add_argument("--oracle", action="store_true", help="cross-check by bisection on the tie")
    sp.set_defaults(func=cmd_taubar)
    return parser


def run(argv=None, stdout=None):
    """Parse ``argv``, run the command, write the record; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "max_iter", 1) < 1:
        print("pieprox: --max-iter must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        rec, status = args.func(args, argv)
    except UsageError as exc:
        print(f"pieprox {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stdout.write(render(rec, args.format))
    return status


def main():
    sys.exit(run())
