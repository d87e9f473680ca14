"""Command-line front end.

Exit codes: 0 = negative curvature found (or bench/exhaustive/gen
completed), 1 = search exhausted with no eigenvalue below -epsilon,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bench
from .functions import make_function
from .oracles import ExactHessianOracle, FDOracle
from .ordering import (
    ALL_VARIANTS,
    BUILDS,
    HEURISTICS,
    VariantSpec,
    build_order,
    enumerate_orders,
    heuristic_permutation,
)
from .seeker import SeekerConfig, certified_upper_bound, seek

EXIT_FOUND = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2


class CliError(Exception):
    pass


def _seek_with_variant(oracle, heuristic, build, epsilon):
    diag = [oracle.diagonal(i) for i in range(1, oracle.dim + 1)]
    order = build_order(heuristic_permutation(diag, heuristic), build)
    result = seek(oracle, order, SeekerConfig(epsilon=epsilon))
    result.variant = VariantSpec(heuristic, build).name
    return result


def _print_result(result, as_json, extra=None):
    payload = result.to_dict()
    if extra:
        payload.update(extra)
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        line = "lambda=%g, iterations=%d, status=%s, oracle_cost=%d" % (
            payload["lambda"],
            payload["iterations"],
            payload["status"],
            payload["oracle_cost"],
        )
        if payload["certificate_indices"] is not None:
            line += ", certificate=%s" % (payload["certificate_indices"],)
        for key in sorted(extra or {}):
            line += ", %s=%g" % (key, extra[key])
        print(line)


def cmd_detect(args) -> int:
    matrix = bench.load_matrix(args.matrix, args.format)
    result = _seek_with_variant(
        ExactHessianOracle(matrix), args.heuristic, args.build, args.epsilon
    )
    _print_result(result, args.json)
    return EXIT_FOUND if result.found_negative else EXIT_NOT_FOUND


def cmd_detect_fd(args) -> int:
    point = np.array([float(t) for t in args.point.split(",")]) if args.point else None
    dim = None if point is None else point.shape[0]
    f = make_function(args.function, dim)
    if point is None:
        point = np.zeros(f.dim)
    if point.shape != (f.dim,):
        raise CliError("point dimension %d does not match function dimension %d" % (point.shape[0], f.dim))
    oracle = FDOracle(f, point, args.h)
    result = _seek_with_variant(oracle, args.heuristic, args.build, args.epsilon)
    extra = {}
    if args.lipschitz is not None:
        extra["certified_upper_bound"] = certified_upper_bound(
            result, f.dim, args.lipschitz, args.h
        )
    _print_result(result, args.json, extra)
    return EXIT_FOUND if result.found_negative else EXIT_NOT_FOUND


def _load_suite(args) -> list[bench.MatrixCase]:
    if args.suite:
        paths = sorted(
            p for p in Path(args.suite).iterdir() if p.suffix in (".mtx", ".txt", ".dat")
        )
        cases = [
            bench.MatrixCase(id=p.stem, matrix=bench.load_matrix(p), source=str(p))
            for p in paths
        ]
    else:
        count, sizes = _parse_generate_spec(args.generate)
        cases = bench.generate_suite(count, sizes, seed=args.seed)
    if not cases:
        raise CliError("suite is empty")
    return cases


def _parse_generate_spec(spec: str) -> tuple[int, list[int]]:
    # "COUNT:N" or "COUNT:NMIN-NMAX", e.g. "100:4-10"
    try:
        count_s, size_s = spec.split(":")
        count = int(count_s)
        if "-" in size_s:
            lo, hi = (int(t) for t in size_s.split("-"))
            sizes = list(range(lo, hi + 1))
        else:
            sizes = [int(size_s)]
        if count < 1 or min(sizes) < 2:
            raise ValueError
    except ValueError:
        raise CliError("bad --generate spec %r (expected COUNT:N or COUNT:NMIN-NMAX)" % spec) from None
    return count, sizes


def _apply_transform(cases, transform, seed):
    if transform == "none":
        return cases
    fn = (
        bench.random_permutation_transform
        if transform == "permute"
        else bench.random_orthogonal_transform
    )
    streams = np.random.SeedSequence(seed).spawn(len(cases))
    return [
        bench.MatrixCase(id=c.id, matrix=fn(c.matrix, s), transform=transform, source=c.source)
        for c, s in zip(cases, streams)
    ]


def cmd_bench(args) -> int:
    cases = _load_suite(args)
    cases = _apply_transform(cases, args.transform, args.seed)
    kept, discarded = bench.filter_negative_diagonal(cases)
    if not kept:
        raise CliError("no cases left after discarding negative-diagonal matrices")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    threads = args.threads if args.threads else (os.cpu_count() or 1)
    records = bench.run_grid(kept, ALL_VARIANTS, threads=threads)
    all_records = list(records)
    summary = {
        "case_count": len(kept),
        "discarded_negative_diagonal": len(discarded),
        "transform": args.transform,
        "seed": args.seed,
        "exact": {
            "winner_percentages": bench.winner_table(records).formatted(),
        },
        "fd": {},
    }
    for h in _parse_h_list(args.h):
        fd_records = bench.run_grid(kept, ALL_VARIANTS, h=h, threads=threads)
        all_records.extend(fd_records)
        summary["fd"]["%g" % h] = {
            "winner_percentages": bench.winner_table(fd_records).formatted(),
        }
    bench.write_records_csv(all_records, out / "records.csv")
    bench.write_summary_json(summary, out / "summary.json")
    print("wrote %d records for %d cases to %s" % (len(all_records), len(kept), out))
    return EXIT_FOUND


def _parse_h_list(text):
    if not text:
        return []
    return [float(t) for t in text.split(",")]


def cmd_exhaustive(args) -> int:
    matrix = bench.load_matrix(args.matrix, args.format)
    mode = {"perm-build": "perm_x_build", "all-pairs": "all_pair_orders"}[args.mode]
    case = bench.MatrixCase(id=Path(args.matrix).stem, matrix=matrix)
    comparison = bench.ordered_vs_best([case], mode=mode)
    best = comparison.best_iterations[case.id]
    ordered = comparison.ordered_iterations[case.id]
    best_order = None
    for order in enumerate_orders(matrix.n, mode):
        result = seek(ExactHessianOracle(matrix), order)
        if result.iterations == best:
            best_order = order
            break
    payload = {
        "mode": args.mode,
        "best_iterations": best,
        "ordered_iterations": ordered,
        "gap": comparison.gaps[case.id],
        "best_order": [list(p) for p in best_order],
    }
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(
            "best=%d, ordered=%d, gap=%d, best_order=%s"
            % (best, ordered, payload["gap"], best_order)
        )
    return EXIT_FOUND


def cmd_gen(args) -> int:
    try:
        matrix = bench.generate_matrix(args.n, args.neg, args.seed)
    except RuntimeError as err:
        raise CliError(str(err)) from err
    bench.save_matrix_market(args.out, matrix)
    print("wrote %dx%d matrix with %d negative eigenvalue(s) to %s" % (args.n, args.n, args.neg, args.out))
    return EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negcurv",
        description="Detect negative eigenvalues of symmetric matrices by "
        "incrementally revealing coefficients and testing principal submatrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_variant_flags(p):
        p.add_argument("--heuristic", choices=HEURISTICS, default="ordered")
        p.add_argument("--build", choices=BUILDS, default="build2")
        p.add_argument("--epsilon", type=float, default=0.0)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("detect", help="run the seeker on an exact matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--format", choices=["matrix-market", "dense-text", "auto"], default="auto")
    add_variant_flags(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("detect-fd", help="run the seeker on a finite-difference oracle")
    p.add_argument("--function", required=True, help="registry name or quadratic:PATH")
    p.add_argument("--point", default=None, help="comma-separated base point")
    p.add_argument("--h", type=float, required=True, help="finite-difference step")
    p.add_argument("--lipschitz", type=float, default=None, help="Hessian Lipschitz constant for the certified bound")
    add_variant_flags(p)
    p.set_defaults(func=cmd_detect_fd)

    p = sub.add_parser("bench", help="run the 8-variant benchmark grid")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--suite", help="directory of .mtx/.txt matrix files")
    src.add_argument("--generate", help="synthetic suite spec COUNT:N or COUNT:NMIN-NMAX")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transform", choices=["none", "permute", "orthogonal"], default="none")
    p.add_argument("--h", default=None, help="comma-separated finite-difference steps")
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("exhaustive", help="compare the natural order against every enumerated order")
    p.add_argument("--matrix", required=True)
    p.add_argument("--format", choices=["matrix-market", "dense-text", "auto"], default="auto")
    p.add_argument("--mode", choices=["perm-build", "all-pairs"], default="perm-build")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_exhaustive)

    p = sub.add_parser("gen", help="write a synthetic symmetric matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--neg", type=int, required=True, help="number of negative eigenvalues")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
