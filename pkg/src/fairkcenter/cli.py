"""Command-line front end.

JSON goes to stdout (or ``--output``); human-readable notes go to stderr.
Exit codes: 0 success (algorithmic Fail / NoFeasible included), 2 usage
error, 3 I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bench
from .io import (FormatError, GeneratorSpec, RunReport, generate, load_matrix,
                 load_points_csv, write_matrix, write_points_csv, write_report)
from .oracle import brute_fair_kcenter
from .radii import approx_fair_radii, exact_fair_radii
from .solver import Fail, NoFeasible, fairness_ratios, gonzalez, solve_exact22, solve_fast10

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 3


class UsageError(Exception):
    pass


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _unit_interval(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1), got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairkcenter", description="Individually fair k-center tools")
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p, required=True):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--input", help="CSV file, one point per row")
        g.add_argument("--matrix", help="distance matrix file")
        g.add_argument("--gen", help="generator spec, e.g. uniform_box:n=600,dim=2,seed=1")
        p.add_argument("--metric", choices=("euclidean", "manhattan"), default="euclidean")
        p.add_argument("--output", default="-", help="output path (default stdout)")

    p = sub.add_parser("radii", help="exact or approximate fairness radii")
    inputs(p)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--radii-mode", choices=("exact", "approx"), default="exact")
    p.add_argument("--delta", type=_unit_interval, default=0.1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("solve", help="run a solver and write a run report")
    inputs(p)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_positive_float, default=1.0)
    p.add_argument("--epsilon", type=_positive_float, default=0.5)
    p.add_argument("--delta", type=_unit_interval, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithm", choices=("exact22", "fast10", "gonzalez"), default="exact22")
    p.add_argument("--pad-to-k", action="store_true")

    p = sub.add_parser("oracle", help="brute-force optimum (n <= 20)")
    inputs(p)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_positive_float, default=1.0)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--gen", required=True, help="generator spec, e.g. uniform_box:n=600,dim=2,seed=1")
    p.add_argument("--format", choices=("csv", "matrix"), default="csv")
    p.add_argument("--output", default="-")

    p = sub.add_parser("bench", help="repeated fast10 trials and a wall-time scaling table")
    inputs(p, required=False)
    p.add_argument("--k", type=_positive_int, default=5)
    p.add_argument("--alpha", type=_positive_float, default=2.0)
    p.add_argument("--epsilon", type=_positive_float, default=0.5)
    p.add_argument("--delta", type=_unit_interval, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive_int, default=20)
    p.add_argument("--sizes", default="500,1000,2000,4000",
                   help="comma-separated n values for the scaling table ('' to skip)")
    return parser


def _load(args):
    if args.input:
        return load_points_csv(args.input, metric=args.metric)
    if args.matrix:
        return load_matrix(args.matrix)
    try:
        spec = GeneratorSpec.parse(args.gen)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --gen spec: {exc}") from None
    return generate(spec)


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_radii(args) -> None:
    inst = _load(args)
    if args.radii_mode == "exact":
        radii = exact_fair_radii(inst, args.k)
    else:
        res = approx_fair_radii(inst, args.k, args.delta, args.seed)
        if res.failed:
            print(f"approximate radii failed: exact set grew past 3k={3 * args.k}", file=sys.stderr)
            _emit(_dump(None), args.output)
            return
        radii = res.radii
    _emit(_dump([float(v) for v in radii.values]), args.output)


def _cmd_solve(args) -> None:
    inst = _load(args)
    if args.k > inst.n:
        raise UsageError(f"--k {args.k} exceeds n={inst.n}")
    report = RunReport(algorithm=args.algorithm, n=inst.n, k=args.k, alpha=args.alpha,
                       epsilon=args.epsilon, delta=args.delta, seed=args.seed)
    t0 = time.perf_counter()
    if args.algorithm == "exact22":
        res = solve_exact22(inst, args.k, args.alpha, pad_to_k=args.pad_to_k)
    elif args.algorithm == "fast10":
        res = solve_fast10(inst, args.k, args.alpha, args.epsilon, args.delta, args.seed,
                           pad_to_k=args.pad_to_k)
    else:
        res = gonzalez(inst, args.k)
    report.wall_ms = 1e3 * (time.perf_counter() - t0)

    report.radii_mode = res.meta.get("radii_mode")
    report.exact_radius_computations = res.meta.get("exact_radius_computations")
    if isinstance(res, Fail):
        report.fail = True
        print("sampling failure detected; rerun with another --seed", file=sys.stderr)
    elif isinstance(res, NoFeasible):
        report.feasible = False
        print("no feasible solution found", file=sys.stderr)
    else:
        report.centers = list(res.centers)
        report.cost = res.cost
        exact = exact_fair_radii(inst, args.k)
        report.max_fairness_ratio = float(fairness_ratios(inst, res.centers, exact).max())
        if args.algorithm != "gonzalez":
            report.feasible = True
        if res.meta.get("delegated"):
            print("fast10 delegated to exact22 (k > n/6 or k^2/eps > n^2 ln n)", file=sys.stderr)
        print(f"{args.algorithm}: {len(res.centers)} centers, cost {res.cost:.6g}, "
              f"max fairness ratio {report.max_fairness_ratio:.4g}", file=sys.stderr)
    _emit(report.to_json() + "\n", args.output)


def _cmd_oracle(args) -> None:
    inst = _load(args)
    try:
        res = brute_fair_kcenter(inst, args.k, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(_dump(res.to_dict()), args.output)


def _cmd_gen(args) -> None:
    try:
        inst = generate(GeneratorSpec.parse(args.gen))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --gen spec: {exc}") from None
    out = sys.stdout if args.output == "-" else args.output
    if args.format == "csv":
        write_points_csv(inst, out)
    else:
        write_matrix(inst, out)


def _cmd_bench(args) -> None:
    result = {}
    if args.input or args.matrix or args.gen:
        inst = _load(args)
        seeds = range(args.seed, args.seed + args.trials)
        exact = exact_fair_radii(inst, args.k)
        result["trials"] = bench.run_trials(inst, args.k, args.alpha, args.epsilon, args.delta,
                                            seeds, fair_radii=exact)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    if sizes:
        result["scaling"] = bench.scaling_table(sizes, args.k, args.alpha, args.epsilon,
                                                args.delta, args.seed)
        for row in result["scaling"]:
            ratio = "" if row["ratio"] is None else f"  x{row['ratio']:.2f}"
            print(f"n={row['n']:>6}  {row['wall_ms']:9.1f} ms{ratio}", file=sys.stderr)
    _emit(_dump(result), args.output)


COMMANDS = {"radii": _cmd_radii, "solve": _cmd_solve, "oracle": _cmd_oracle,
            "gen": _cmd_gen, "bench": _cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
