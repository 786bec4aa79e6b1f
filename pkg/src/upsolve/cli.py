"""Command line entry point.

    upsolve --type {lcp|qp|lp} --input FILE [--output FILE] [--tol RAT]
            [--threads N] [--pivot-limit N] [--plot FILE] [--samples N]
    upsolve gen --h N --seed S --out FILE [--density D]

Exit codes: 0 solved, 2 parse error, 3 assumption violated, 4 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from .exceptions import AssumptionViolation, InvariantError, ParseError
from .io import emit_plot_data, generate_sufficient_instance, parse_instance, write_instance, write_partition
from .reformulate import check_convexity, lp_to_lcp, map_solution_back, qp_to_lcp
from .solver import SolverOptions, solve_uplcp

EXIT_OK, EXIT_PARSE, EXIT_ASSUMPTION, EXIT_INVARIANT = 0, 2, 3, 4

log = logging.getLogger("upsolve")


def _rational(text):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _solve_parser():
    p = argparse.ArgumentParser(prog="upsolve", description="Solve uni-parametric LCP, QP and LP instances.")
    p.add_argument("--type", choices=["lcp", "qp", "lp"], required=True)
    p.add_argument("--input", required=True, help="instance file ('-' for stdin)")
    p.add_argument("--output", help="partition report (default: stdout)")
    p.add_argument("--tol", type=_rational, default=Fraction(1, 10 ** 9),
                   help="output precision, e.g. 1/1000 or 0.001")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--pivot-limit", type=_positive_int, default=None)
    p.add_argument("--max-intervals", type=_positive_int, default=None)
    p.add_argument("--plot", help="write theta,variable,value CSV here")
    p.add_argument("--samples", type=_positive_int, default=25, help="plot samples per piece")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _gen_parser():
    p = argparse.ArgumentParser(prog="upsolve gen", description="Generate a random sufficient upLCP on [0, 1].")
    p.add_argument("--h", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--out", required=True, help="instance file ('-' for stdout)")
    return p


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _gen(argv):
    args = _gen_parser().parse_args(argv)
    if not 0 < args.density <= 1:
        print("upsolve gen: density must lie in (0, 1]", file=sys.stderr)
        return EXIT_PARSE
    _write(args.out, write_instance(generate_sufficient_instance(args.h, args.density, args.seed)))
    return EXIT_OK


def _solve(argv):
    args = _solve_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
        inst = parse_instance(text, args.type)
    except (OSError, ParseError) as exc:
        print(f"upsolve: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if args.samples < 2 and args.plot:
        print("upsolve: --samples must be at least 2", file=sys.stderr)
        return EXIT_PARSE
    opts = SolverOptions(workers=args.threads, eps=args.tol, pivot_limit=args.pivot_limit,
                         max_intervals=args.max_intervals)
    try:
        if args.type == "lcp":
            partition = solve_uplcp(inst, opts)
            result = partition
        else:
            if args.type == "qp":
                check_convexity(inst)
                lcp, index_map = qp_to_lcp(inst)
            else:
                lcp, index_map = lp_to_lcp(inst)
            partition = solve_uplcp(lcp, opts)
            result = map_solution_back(partition, index_map)
    except AssumptionViolation as exc:
        print(f"upsolve: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except InvariantError as exc:
        print(f"upsolve: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT

    log.info("%d pieces after %d intervals", len(partition), partition.stats.get("intervals", 0))
    _write(args.output, write_partition(result, args.tol))
    if args.plot:
        _write(args.plot, emit_plot_data(result, args.samples, args.tol))
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "gen":
        return _gen(argv[1:])
    return _solve(argv)


if __name__ == "__main__":
    sys.exit(main())
