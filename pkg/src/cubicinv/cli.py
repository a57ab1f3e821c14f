"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 inconclusive (or, for ``conjecture``,
any trial that is not CONSISTENT).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .conjecture import DEFAULT_BUDGET, run_experiment, run_trial
from .druzkowski import (
    GeneratorConfig,
    MatrixFormatError,
    load_matrix,
    matrix_to_text,
    paper_example,
)
from .identities import check_all, identity_report
from .inversion import Status, invert, verify_inverse
from .poly import parse_rational
from .polymap import nilpotency_index

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return load_matrix(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except MatrixFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_invert(args) -> int:
    m = _load(args.matrix)
    result = invert(m.map, cap=args.max_iter, max_terms=args.budget)
    trace = result.trace
    out = []
    if result.status is Status.INVERTED:
        if not verify_inverse(m.map, result.inverse):
            raise RuntimeError("computed inverse failed the composition check")
        out.append(result.inverse.to_text(var="Y", name="G"))
    out.append("m = " + " ".join("UNRESOLVED" if t is None else str(t) for t in trace.termination))
    if result.status is Status.INVERTED:
        out.append(f"deg G = {result.inverse.degree()}")
    out.append(f"status = {result.status.value}")
    if trace.budget_exceeded:
        out.append("note = term budget exceeded")
    elif trace.provably_not_invertible:
        out.append("note = default cap exhausted")
    if args.trace:
        out.append(trace.to_text())
    if args.conjecture:
        record = run_trial(m, max_terms=args.budget)
        out.append(f"verdict = {record.verdict.value}")
    print("\n".join(out))
    return EXIT_OK if result.status is Status.INVERTED else EXIT_INCONCLUSIVE


def cmd_nilpotency(args) -> int:
    m = _load(args.matrix)
    g = nilpotency_index(m.jacobian_h(), args.cap)
    print(g)
    return EXIT_OK


def cmd_identities(args) -> int:
    m = _load(args.matrix)
    checks = check_all(m)
    sys.stdout.write(identity_report(checks))
    return EXIT_OK if all(checks) else EXIT_INCONCLUSIVE


def cmd_conjecture(args) -> int:
    config = GeneratorConfig(
        dimension=args.dim, levels=args.g, seed=args.seed, density=args.density,
    )
    report = run_experiment(
        config, args.trials, max_terms=args.budget, workers=args.workers,
        reproducer_dir=args.reproducer_dir,
    )
    Path(args.out).write_text(report.to_json(include_timing=args.timing))
    print(report.summary())
    print(f"report written to {args.out} ({report.wall_time:.2f}s)", file=sys.stderr)
    return EXIT_OK if report.counts["CONSISTENT"] == report.trials else EXIT_INCONCLUSIVE


def cmd_example(args) -> int:
    parts = args.params.split(",")
    if len(parts) != 7:
        raise InputError("--params needs 7 comma-separated values a2,a3,a4,a5,b3,b4,b5")
    try:
        values = [parse_rational(p) for p in parts]
    except ValueError as exc:
        raise InputError(f"--params: {exc}") from None
    text = matrix_to_text(paper_example(*values))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubicinv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invert", help="invert F = Id + (L_i^3) from a matrix file")
    inv.add_argument("matrix")
    inv.add_argument("--max-iter", type=_positive, default=None,
                     help="difference steps per coordinate (default (3^(d-1)+1)/2)")
    inv.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                     help="max terms of any intermediate polynomial")
    inv.add_argument("--trace", action="store_true", help="print per-step degrees")
    inv.add_argument("--conjecture", action="store_true",
                     help="also print the step-count conjecture verdict")
    inv.set_defaults(func=cmd_invert)

    nil = sub.add_parser("nilpotency", help="nilpotency index of JH")
    nil.add_argument("matrix")
    nil.add_argument("--cap", type=_positive, default=None)
    nil.set_defaults(func=cmd_nilpotency)

    ide = sub.add_parser("identities", help="check the (JH)^3 = 0 identities")
    ide.add_argument("matrix")
    ide.set_defaults(func=cmd_identities)

    con = sub.add_parser("conjecture", help="seeded step-count experiment")
    con.add_argument("--dim", type=_positive, required=True)
    con.add_argument("--g", type=_positive, required=True)
    con.add_argument("--trials", type=_positive, default=20)
    con.add_argument("--seed", type=int, default=0)
    con.add_argument("--density", type=_rational, default="3/4")
    con.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    con.add_argument("--workers", type=_positive, default=1)
    con.add_argument("--out", default="conjecture_report.json")
    con.add_argument("--reproducer-dir", default="counterexamples")
    con.add_argument("--timing", action="store_true", help="include wall time in the report")
    con.set_defaults(func=cmd_conjecture)

    ex = sub.add_parser("example", help="matrix file of the five-variable example family")
    ex.add_argument("--params", default="1,0,0,0,1,0,0",
                    help="a2,a3,a4,a5,b3,b4,b5 as rationals")
    ex.add_argument("--out", default=None)
    ex.set_defaults(func=cmd_example)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
