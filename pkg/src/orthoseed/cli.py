"""Command-line front end.

Exit status: 0 on success, 1 on an input error, 2 when the result is a
flagged partial table.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .algorithms import ALGORITHMS, compute
from .errors import EigenConvergenceError, ParameterError, QuadratureError
from .experiments import EXPERIMENTS, parse_param, run_experiment
from .measure import load_measure
from .poly import gauss_quadrature

EXIT_OK, EXIT_INPUT, EXIT_FLAGGED = 0, 1, 2


def _num(v):
    return f"{v:.17g}"


def table_csv(table, N):
    """Rows ``n,a,b`` for n = 0..N; ``a_0`` and ``b_N`` are left blank."""
    lines = ["n,a,b"]
    for n in range(N + 1):
        a = _num(table.a[n - 1]) if 1 <= n <= len(table.a) else ""
        b = _num(table.b[n]) if n < min(N, len(table.b)) else ""
        if not a and not b:
            break
        lines.append(f"{n},{a},{b}")
    return "\n".join(lines) + "\n"


def table_json(table, N, algo):
    doc = {
        "algorithm": algo,
        "N": N,
        "a": [float(v) for v in table.a[:N]],
        "b": [float(v) for v in table.b[:N]],
        "failure_index": table.failure_index,
        "converged": table.converged,
        "message": table.message,
    }
    return json.dumps(doc, indent=2) + "\n"


def _write(path, text):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text)


def _report_flag(table, N):
    complete = len(table.b) >= N and len(table.a) >= N
    if table.flagged or not table.converged or not complete:
        where = table.failure_index if table.failure_index is not None else min(len(table.a), len(table.b))
        print(f"flagged: stopped at index {where}: {table.message or 'not converged'}", file=sys.stderr)
        return EXIT_FLAGGED
    return EXIT_OK


def cmd_compute(args):
    measure = load_measure(args.measure)
    table = compute(args.algo, measure, args.N)
    text = table_csv(table, args.N) if args.format == "csv" else table_json(table, args.N, args.algo)
    _write(args.out, text)
    return _report_flag(table, args.N)


def cmd_quadrature(args):
    measure = load_measure(args.measure)
    table = compute("pcl", measure, args.K)
    status = _report_flag(table, args.K)
    if status != EXIT_OK:
        return status
    rule = gauss_quadrature(table, args.K)
    lines = ["k,node,weight"]
    for k, (x, w) in enumerate(zip(rule.nodes, rule.weights)):
        lines.append(f"{k},{_num(x)},{_num(w)}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_experiment(args):
    params = dict(parse_param(p) for p in args.param)
    report = run_experiment(args.name, seed=args.seed, params=params)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{args.name}.csv").write_text(report.to_csv())
    (out / f"{args.name}.json").write_text(report.to_json())
    series = report.series_csv()
    if series is not None:
        (out / f"{args.name}_series.csv").write_text(series)
    return EXIT_OK


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def build_parser():
    parser = argparse.ArgumentParser(prog="orthoseed",
                                     description="Recurrence coefficients and Gauss rules for general measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="recurrence coefficients of a measure")
    p.add_argument("--measure", required=True, help="measure spec (JSON)")
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("-N", type=_positive_int, required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("quadrature", help="K-point Gauss rule of a measure")
    p.add_argument("--measure", required=True)
    p.add_argument("-K", type=_positive_int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_quadrature)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("--name", required=True, choices=tuple(EXPERIMENTS))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; that code means "flagged" here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        with np.errstate(all="ignore"):
            return args.func(args)
    except (ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (QuadratureError, EigenConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGGED


if __name__ == "__main__":
    sys.exit(main())
