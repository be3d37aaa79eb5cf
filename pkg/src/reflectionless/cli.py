"""Command-line front end: ``reflectionless {eval,verify,extract}``.

Every flag can also be set through an environment variable named
``REFLECTIONLESS_<FLAG>`` (upper case, dashes as underscores); flags win.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import analytic as an
from . import completeness as cm
from .params import DomainError
from .verification import SUITES, RunConfig, render, run_suite

ENV_PREFIX = "REFLECTIONLESS_"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

EVAL_TARGETS = ("potential", "psi0", "psik", "parity_even", "parity_odd")

REPORT_COLUMNS = ["check_name", "expected", "actual", "abs_error", "tolerance", "passed"]
EXTRACT_COLUMNS = ["kind", "x", "extracted", "analytic", "abs_error"]


def _env(name, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name)
    return default if raw is None else cast(raw)


def _common_parser():
    d = RunConfig()
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--kappa", type=float, default=_env("KAPPA", d.kappa, float))
    g.add_argument("--tol", type=float, default=_env("TOL", d.tolerance, float),
                   help="tolerance for quadrature-level checks (integrator runs 1e4 tighter)")
    g.add_argument("--format", choices=("csv", "json"), default=_env("FORMAT", d.output_format))
    g.add_argument("--out", default=_env("OUT", d.output_path), help="output path, '-' for stdout")
    g.add_argument("--seed", type=int, default=_env("SEED", d.seed, int))
    g.add_argument("--k-max", type=float, default=_env("K_MAX", d.k_max, float))
    g.add_argument("--k-points", type=int, default=_env("K_POINTS", d.k_points, int))
    g.add_argument("--grid-n", type=int, default=_env("GRID_N", d.grid_n, int))
    g.add_argument("--grid-l", type=float, default=_env("GRID_L", d.grid_half_width, float))
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="reflectionless",
                                     description="Spectral checks for the sech^2 reflectionless well.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="tabulate a potential or eigenfunction")
    ev.add_argument("what", choices=EVAL_TARGETS)
    ev.add_argument("--k", type=float, default=_env("K", 1.0, float), help="wavenumber for continuum states")
    ev.add_argument("--x-min", type=float, default=_env("X_MIN", -4.0, float))
    ev.add_argument("--x-max", type=float, default=_env("X_MAX", 4.0, float))
    ev.add_argument("--step", type=float, default=_env("STEP", 0.01, float))

    ve = sub.add_parser("verify", parents=[common], help="run verification checks")
    ve.add_argument("suite", choices=tuple(SUITES) + ("all",))

    ex = sub.add_parser("extract", parents=[common], help="recover the bound state from the continuum defect")
    ex.add_argument("--x-min", type=float, default=_env("X_MIN", None, float))
    ex.add_argument("--x-max", type=float, default=_env("X_MAX", None, float))
    ex.add_argument("--points", type=int, default=_env("POINTS", 401, int))
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(kappa=args.kappa, tolerance=args.tol, grid_half_width=args.grid_l,
                     grid_n=args.grid_n, k_max=args.k_max, k_points=args.k_points,
                     output_format=args.format, output_path=args.out, seed=args.seed)


def _csv_text(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([render(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def _json_text(cfg, records, summary):
    return json.dumps({"config": cfg.to_dict(), "records": records, "summary": summary}, indent=2) + "\n"


def _write(cfg, text):
    if cfg.output_path == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _num(v):
    return float(render(v))


def cmd_eval(args, cfg):
    p = cfg.params()
    if args.step <= 0 or args.x_max < args.x_min:
        raise DomainError("need step > 0 and x_max >= x_min")
    n = int(round((args.x_max - args.x_min) / args.step)) + 1
    x = np.linspace(args.x_min, args.x_min + (n - 1) * args.step, n)
    what = args.what
    if what == "potential":
        cols, vals = ["x", "value"], [an.potential_v(x, p)]
    elif what == "psi0":
        cols, vals = ["x", "value"], [an.psi0(x, p).real]
    else:
        fn = {"psik": an.psi_k, "parity_even": an.parity_even, "parity_odd": an.parity_odd}[what]
        z = fn(args.k, x, p)
        cols, vals = ["x", "value", "re", "im"], [np.abs(z), z.real, z.imag]
    rows = [[xi] + [float(v[i]) for v in vals] for i, xi in enumerate(x)]
    if cfg.output_format == "csv":
        return _csv_text(cols, rows), EXIT_OK
    records = [dict(zip(cols, map(_num, r))) for r in rows]
    summary = {"what": what, "rows": len(rows)}
    if what in ("psik", "parity_even", "parity_odd"):
        summary["k"] = args.k
    return _json_text(cfg, records, summary), EXIT_OK


def cmd_verify(args, cfg):
    records = run_suite(args.suite, cfg)
    n_pass = sum(r.passed for r in records)
    ok = n_pass == len(records)
    if cfg.output_format == "csv":
        rows = [[r.check_name, r.expected, r.actual, r.abs_error, r.tolerance, r.passed] for r in records]
        text = _csv_text(REPORT_COLUMNS, rows)
    else:
        recs = [{"check_name": r.check_name, "expected": r.expected, "actual": r.actual,
                 "abs_error": _num(r.abs_error) if np.isfinite(r.abs_error) else None,
                 "tolerance": _num(r.tolerance), "passed": r.passed} for r in records]
        text = _json_text(cfg, recs, {"suite": args.suite, "total": len(records),
                                      "passed": n_pass, "failed": len(records) - n_pass, "all_passed": ok})
    for r in records:
        if not r.passed:
            print(f"FAIL {r.check_name}: |err| = {r.abs_error:.3g} > {r.tolerance:.3g}", file=sys.stderr)
    return text, EXIT_OK if ok else EXIT_FAIL


def cmd_extract(args, cfg):
    p = cfg.params()
    lo = args.x_min if args.x_min is not None else -cfg.grid_half_width
    hi = args.x_max if args.x_max is not None else cfg.grid_half_width
    if args.points < 2 or hi <= lo:
        raise DomainError("need points >= 2 and x_max > x_min")
    x = np.linspace(lo, hi, args.points)
    got = cm.extract_bound_state(x, p)
    ref = an.psi0(x, p).real
    err = np.abs(got - ref)
    trace = cm.count_bound_states(p, cfg.quadrature())
    rows = [["sample", xi, gi, ri, ei] for xi, gi, ri, ei in zip(x, got, ref, err)]
    rows.append(["trace", "", trace, 1.0, abs(trace - 1.0)])
    if cfg.output_format == "csv":
        return _csv_text(EXTRACT_COLUMNS, rows), EXIT_OK
    records = [{"kind": "sample", "x": _num(r[1]), "extracted": _num(r[2]), "analytic": _num(r[3]),
                "abs_error": _num(r[4])} for r in rows[:-1]]
    summary = {"max_abs_error": _num(err.max()), "bound_state_count": _num(trace)}
    return _json_text(cfg, records, summary), EXIT_OK


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "extract": cmd_extract}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        text, code = COMMANDS[args.command](args, cfg)
    except (DomainError, ValueError) as exc:
        print(f"reflectionless: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _write(cfg, text)
    except OSError as exc:
        print(f"reflectionless: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
