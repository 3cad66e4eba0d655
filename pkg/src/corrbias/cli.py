"""Command-line interface.

Exit codes: 0 success, 1 validation cells failed, 2 usage error or malformed
input, 3 degenerate sample, 4 numerical solver failure. Data goes to stdout
(or ``--out``); diagnostics go to stderr.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from .density import DEFAULT_CONFIG
from .errors import ConvergenceError, DegenerateSampleError, ParameterDomainError
from .estimators import (
    AffineTowardOne,
    BivariateSample,
    Identity,
    NegativeShrink,
    QuantileBias,
    UpwardShift,
    pearson_r,
    transform_apply,
)
from .svg import line_plot
from .underestimation import curve, default_grid, transform_curve
from .validation import SCENARIOS, run_scenario

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_SOLVER = 4

METHODS = ("identity", "affine", "shrink", "shift", "quantile")
DEFAULT_SEED = 20240101


class InputError(Exception):
    pass


def fmt(value):
    """12 significant digits, shared by CSV and JSON output."""
    return format(float(value), ".12g")


def _num(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(fmt(value))
    return value


def read_pairs(stream, name="<input>"):
    """Parse a two-column numeric CSV; a non-numeric first row is a header."""
    pairs = []
    for lineno, row in enumerate(csv.reader(stream), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise InputError(f"{name}:{lineno}: expected 2 columns, got {len(row)}")
        try:
            pairs.append((float(row[0]), float(row[1])))
        except ValueError:
            if lineno == 1 and not pairs:
                continue
            raise InputError(f"{name}:{lineno}: non-numeric value in {row!r}") from None
    if not pairs:
        raise InputError(f"{name}: no data rows")
    return pairs


def build_transform(args, n):
    method = args.method
    if method == "identity":
        return Identity()
    if method == "affine":
        return AffineTowardOne(args.a)
    if method == "shrink":
        return NegativeShrink(args.b)
    if method == "shift":
        return UpwardShift(args.c, args.eps)
    return QuantileBias(args.alpha, n)


def _open_out(args):
    if args.out in (None, "-"):
        return sys.stdout, False
    return open(args.out, "w", newline="", encoding="utf-8"), True


def _emit(args, header, rows, payload):
    out, close = _open_out(args)
    try:
        if args.format == "json":
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    finally:
        if close:
            out.close()


def cmd_estimate(args):
    if args.input == "-":
        pairs = read_pairs(sys.stdin, "<stdin>")
    else:
        with open(args.input, newline="", encoding="utf-8") as fh:
            pairs = read_pairs(fh, args.input)
    sample = BivariateSample.from_pairs(pairs)
    r_hat = pearson_r(sample)
    n = args.n if args.n is not None else sample.n
    t = build_transform(args, n)
    r_tilde = transform_apply(t, r_hat, DEFAULT_CONFIG)
    params = {k: _num(v) for k, v in t.params().items()}
    record = {"n": sample.n, "r_hat": _num(r_hat), "method": args.method,
              "params": params, "r_tilde": _num(r_tilde)}
    param_text = ";".join(f"{k}={fmt(v)}" for k, v in t.params().items())
    _emit(args, ["n", "r_hat", "method", "params", "r_tilde"],
          [[sample.n, float(r_hat), args.method, param_text, float(r_tilde)]],
          {"result": record})
    return EXIT_OK


def parse_grid(text, low, high):
    if text is None:
        return default_grid(201, low, high)
    if "," not in text:
        try:
            count = int(text)
        except ValueError:
            count = None
        if count is not None:
            if count < 2:
                raise ParameterDomainError("grid count must be at least 2")
            return default_grid(count, low, high)
    try:
        return np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError:
        raise ParameterDomainError(f"cannot parse grid {text!r}") from None


def cmd_curve(args):
    t = build_transform(args, args.n)
    if args.mode == "transform":
        res = transform_curve(t, parse_grid(args.grid, -1.0, 1.0), DEFAULT_CONFIG)
        xs, ys, keys = res.r_hat, res.r_tilde, ("r_hat", "r_tilde")
        ylim, ylabel = (-1.0, 1.0), "transformed estimate"
    else:
        res = curve(t, args.n, parse_grid(args.grid, -0.99, 0.99), DEFAULT_CONFIG)
        xs, ys, keys = res.rho, res.prob, ("rho", "prob")
        ylim, ylabel = (0.0, 1.0), "P(estimate < rho)"

    payload = {
        "method": args.method,
        "params": {k: _num(v) for k, v in t.params().items()},
        "n": _num(args.n),
        "mode": args.mode,
        "points": [{keys[0]: _num(x), keys[1]: _num(y)} for x, y in zip(xs, ys)],
    }
    _emit(args, list(keys), [[float(x), float(y)] for x, y in zip(xs, ys)], payload)
    if args.svg:
        label = args.method + "".join(f" {k}={v:g}" for k, v in t.params().items())
        doc = line_plot([(label, xs, ys)], (-1.0, 1.0), ylim,
                        title=f"{args.mode} curve, n={args.n:g}",
                        xlabel=keys[0], ylabel=ylabel)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return EXIT_OK


def cmd_validate(args):
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("CORRBIAS_SEED", DEFAULT_SEED))
    cells = run_scenario(args.scenario, trials=args.trials, seed=seed, alpha=args.alpha,
                         n=args.n, rho=args.rho, r_hat=args.r_hat, cfg=DEFAULT_CONFIG)
    passed = all(c.passed for c in cells)
    header = ["scenario", "cell", "analytic", "empirical", "half_width", "tolerance", "pass"]
    rows = [[args.scenario, c.label, float(c.analytic), float(c.empirical),
             float(c.half_width), float(c.tolerance), "true" if c.passed else "false"]
            for c in cells]
    payload = {
        "scenario": args.scenario,
        "seed": seed,
        "trials": args.trials,
        "passed": passed,
        "points": [
            {"cell": c.label, "analytic": _num(c.analytic), "empirical": _num(c.empirical),
             "half_width": _num(c.half_width), "tolerance": _num(c.tolerance),
             "pass": bool(c.passed)}
            for c in cells
        ],
    }
    _emit(args, header, rows, payload)
    for c in cells:
        if not c.passed:
            print(f"FAIL {args.scenario} {c.label}: analytic={fmt(c.analytic)} "
                  f"empirical={fmt(c.empirical)} tolerance={fmt(c.tolerance)}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAILED


def _add_method_args(p):
    p.add_argument("--method", choices=METHODS, default="identity")
    p.add_argument("--a", type=float, default=0.0, help="affine: value at r_hat = 0")
    p.add_argument("--b", type=float, default=0.0, help="shrink: negative-side factor 1-b")
    p.add_argument("--c", type=float, default=0.0, help="shift: upward shift")
    p.add_argument("--eps", type=float, default=1e-6, help="shift: width of the bend onto 1")
    p.add_argument("--alpha", type=float, default=0.95, help="quantile: confidence level")


def _add_output_args(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="corrbias",
        description="Exact Pearson-r distribution and upward-biased correlation estimators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate correlation from a two-column CSV")
    p.add_argument("input", help="CSV file of x,y pairs, or - for stdin")
    _add_method_args(p)
    p.add_argument("--n", type=float, default=None,
                   help="sample size for the quantile method (default: rows in input)")
    _add_output_args(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("curve", help="underestimation probability or transform curve")
    _add_method_args(p)
    p.add_argument("--n", type=float, default=20.0)
    p.add_argument("--mode", choices=("underestimation", "transform"), default="underestimation")
    p.add_argument("--grid", default=None,
                   help="point count or comma list, e.g. --grid=-0.5,0,0.5")
    p.add_argument("--svg", default=None, help="also write an SVG plot here")
    _add_output_args(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("validate", help="run a named validation scenario")
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None,
                   help=f"RNG seed (default: $CORRBIAS_SEED or {DEFAULT_SEED})")
    p.add_argument("--alpha", type=float, default=0.95)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--r-hat", dest="r_hat", type=float, default=0.3,
                   help="consistency: the fixed Pearson estimate")
    _add_output_args(p)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateSampleError as exc:
        print(f"error: degenerate sample: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ConvergenceError as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
