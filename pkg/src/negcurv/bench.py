"""Experiment harness: matrix ingestion and generation, spectrum-preserving
transforms, the 8-variant grid runner, winner tables, and exhaustive
order comparisons with report emission.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .functions import QuadraticForm
from .matrices import SymMatrix
from .oracles import ExactHessianOracle, FDOracle, HessianOracle
from .ordering import (
    ALL_VARIANTS,
    VariantSpec,
    build_order,
    enumerate_orders,
    heuristic_permutation,
)
from .seeker import SeekerConfig, seek

__all__ = [
    "MatrixCase",
    "BenchRecord",
    "WinnerTable",
    "ComparisonResult",
    "load_matrix",
    "save_matrix_market",
    "filter_negative_diagonal",
    "random_permutation_transform",
    "random_orthogonal_transform",
    "haar_orthogonal",
    "generate_matrix",
    "generate_suite",
    "run_grid",
    "winner_table",
    "ordered_vs_best",
    "write_records_csv",
    "write_summary_json",
]

SYMMETRY_RTOL = 1e-12


@dataclass
class MatrixCase:
    id: str
    matrix: SymMatrix
    transform: str = "none"
    h: Optional[float] = None
    source: Optional[str] = None


@dataclass
class BenchRecord:
    case_id: str
    variant: str
    status: str
    iterations: int
    lam: float
    oracle_cost: int
    n: int
    transform: str = "none"
    h: Optional[float] = None
    error: Optional[str] = None


@dataclass
class WinnerTable:
    """Per-variant percentage of cases achieving the minimal iteration
    count; ties are credited to every achieving variant, so percentages
    may sum above 100."""

    percentages: dict[str, float]
    case_count: int

    def formatted(self) -> dict[str, str]:
        return {k: "%.1f" % v for k, v in sorted(self.percentages.items())}


@dataclass
class ComparisonResult:
    """Ordered-heuristic iterations vs the best enumerated order."""

    mode: str
    gaps: dict[str, int]
    best_iterations: dict[str, int]
    ordered_iterations: dict[str, int]
    histogram: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if not self.histogram:
            self.histogram = Counter(self.gaps.values())


# ---- matrix ingestion ----


def _sniff_format(path: Path) -> str:
    with open(path) as fh:
        first = fh.readline()
    return "matrix-market" if first.startswith("%%MatrixMarket") else "dense-text"


def load_matrix(path, fmt: str | None = None) -> SymMatrix:
    """Read a symmetric matrix from a Matrix Market or dense-text file.

    dense-text: first line n, then n whitespace-separated rows. The matrix
    must be numerically symmetric within 1e-12 relative; it is then
    symmetrized exactly via (M + M^T)/2.
    """
    path = Path(path)
    if fmt is None or fmt == "auto":
        fmt = _sniff_format(path)
    if fmt == "matrix-market":
        from scipy.io import mmread

        arr = mmread(str(path))
        if hasattr(arr, "toarray"):
            arr = arr.toarray()
        arr = np.asarray(arr, dtype=float)
    elif fmt == "dense-text":
        tokens = path.read_text().split()
        if not tokens:
            raise ValueError("%s: empty dense-text file" % path)
        n = int(tokens[0])
        vals = [float(t) for t in tokens[1:]]
        if len(vals) != n * n:
            raise ValueError(
                "%s: expected %d entries for n=%d, found %d" % (path, n * n, n, len(vals))
            )
        arr = np.array(vals).reshape(n, n)
    else:
        raise ValueError("unknown matrix format %r" % (fmt,))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("%s: matrix is not square" % path)
    scale = 1.0 + np.max(np.abs(arr)) if arr.size else 1.0
    if np.max(np.abs(arr - arr.T)) > SYMMETRY_RTOL * scale:
        raise ValueError("%s: matrix is asymmetric beyond tolerance" % path)
    return SymMatrix.from_array(arr)


def save_matrix_market(path, A: SymMatrix) -> None:
    """Write the lower triangle as a symmetric coordinate Matrix Market file
    (deterministic formatting)."""
    n = A.n
    lines = ["%%MatrixMarket matrix coordinate real symmetric"]
    entries = [(i, j, A.entry(i, j)) for i in range(1, n + 1) for j in range(1, i + 1)]
    lines.append("%d %d %d" % (n, n, len(entries)))
    for i, j, v in entries:
        lines.append("%d %d %.17g" % (i, j, v))
    Path(path).write_text("\n".join(lines) + "\n")


def filter_negative_diagonal(cases: Iterable[MatrixCase]) -> tuple[list[MatrixCase], list[MatrixCase]]:
    """Split cases into (kept, discarded): discarded have some strictly
    negative diagonal entry and would terminate without iterating."""
    kept, discarded = [], []
    for case in cases:
        (discarded if np.any(case.matrix.diag() < 0) else kept).append(case)
    return kept, discarded


# ---- spectrum-preserving transforms ----


def random_permutation_transform(A: SymMatrix, seed) -> SymMatrix:
    """Similarity transform by a seeded uniform random permutation matrix;
    preserves the spectrum exactly."""
    rng = np.random.default_rng(seed)
    p = rng.permutation(A.n)
    return SymMatrix.from_array(A.array[np.ix_(p, p)])


def haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix via QR of a Gaussian matrix with
    the R-diagonal signs normalized positive."""
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * np.sign(np.diag(r))


def random_orthogonal_transform(A: SymMatrix, seed) -> SymMatrix:
    """Similarity transform Q^T A Q with Q Haar-distributed. Preserves the
    spectrum to roundoff, but not the signs of the diagonal entries."""
    rng = np.random.default_rng(seed)
    q = haar_orthogonal(A.n, rng)
    return SymMatrix.from_array(q.T @ A.array @ q)


# ---- synthetic generation ----


def generate_matrix(
    n: int,
    negative_eigenvalues: int,
    seed,
    max_attempts: int = 1000,
) -> SymMatrix:
    """Random symmetric matrix with exactly the requested number of
    negative eigenvalues and an all-positive diagonal (rejection sampled)."""
    if not 0 <= negative_eigenvalues <= n:
        raise ValueError("negative eigenvalue count must be in 0..n")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        spectrum = np.concatenate(
            [
                rng.uniform(-2.0, -0.2, size=negative_eigenvalues),
                rng.uniform(0.2, 2.0, size=n - negative_eigenvalues),
            ]
        )
        q = haar_orthogonal(n, rng)
        arr = q @ np.diag(spectrum) @ q.T
        if np.all(np.diag(arr) > 0):
            return SymMatrix.from_array(arr)
    raise RuntimeError(
        "failed to generate an all-positive-diagonal matrix with %d negative "
        "eigenvalues in %d attempts" % (negative_eigenvalues, max_attempts)
    )


def generate_suite(
    count: int,
    sizes: Sequence[int],
    seed,
    negative_eigenvalues: int = 1,
) -> list[MatrixCase]:
    """Deterministic synthetic suite; each case gets its own RNG stream so
    parallel execution elsewhere cannot perturb the matrices."""
    streams = np.random.SeedSequence(seed).spawn(count)
    cases = []
    for k, stream in enumerate(streams):
        n = sizes[k % len(sizes)]
        matrix = generate_matrix(n, min(negative_eigenvalues, n), stream)
        cases.append(MatrixCase(id="synthetic-%03d" % k, matrix=matrix, source="generated"))
    return cases


# ---- grid runner ----


def make_oracle(case: MatrixCase, h: Optional[float]) -> HessianOracle:
    """Exact oracle for the case matrix, or a finite-difference oracle over
    the quadratic stand-in 0.5 x^T A x at x = 0 when h is given."""
    if h is None:
        return ExactHessianOracle(case.matrix)
    return FDOracle(QuadraticForm(case.matrix), np.zeros(case.matrix.n), h)


def _run_one(case: MatrixCase, variant: VariantSpec, config: SeekerConfig, h: Optional[float]) -> BenchRecord:
    try:
        oracle = make_oracle(case, h)
        diag = [oracle.diagonal(i) for i in range(1, oracle.dim + 1)]
        order = build_order(heuristic_permutation(diag, variant.heuristic), variant.build)
        result = seek(oracle, order, config)
        return BenchRecord(
            case_id=case.id,
            variant=variant.name,
            status=result.status.value,
            iterations=result.iterations,
            lam=float(result.lam),
            oracle_cost=result.oracle_cost,
            n=case.matrix.n,
            transform=case.transform,
            h=h,
        )
    except Exception as err:  # individual case failures never kill the grid
        return BenchRecord(
            case_id=case.id,
            variant=variant.name,
            status="error",
            iterations=-1,
            lam=float("nan"),
            oracle_cost=-1,
            n=case.matrix.n,
            transform=case.transform,
            h=h,
            error=str(err),
        )


def run_grid(
    cases: Sequence[MatrixCase],
    variants: Sequence[VariantSpec] = ALL_VARIANTS,
    config: SeekerConfig | None = None,
    h: Optional[float] = None,
    threads: int | None = None,
) -> list[BenchRecord]:
    """One seek run per (case, variant). Each run owns its oracle, so the
    grid parallelizes safely across a thread pool; record order is fixed
    regardless of thread count."""
    cfg = config or SeekerConfig()
    tasks = [(case, variant) for case in cases for variant in variants]
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda t: _run_one(t[0], t[1], cfg, h), tasks))
    return [_run_one(case, variant, cfg, h) for case, variant in tasks]


def winner_table(records: Sequence[BenchRecord]) -> WinnerTable:
    """Percentage of cases where each variant achieved the minimal
    iteration count; ties credit every achieving variant."""
    by_case: dict[str, list[BenchRecord]] = {}
    for rec in records:
        by_case.setdefault(rec.case_id, []).append(rec)
    variant_sets = {frozenset(r.variant for r in recs) for recs in by_case.values()}
    if len(variant_sets) != 1:
        raise ValueError("incomplete grid: cases were run with differing variant sets")
    variants = sorted(next(iter(variant_sets)))
    wins = {v: 0 for v in variants}
    for recs in by_case.values():
        best = min(r.iterations for r in recs)
        for r in recs:
            if r.iterations == best:
                wins[r.variant] += 1
    count = len(by_case)
    return WinnerTable(
        percentages={v: 100.0 * wins[v] / count for v in variants},
        case_count=count,
    )


# ---- exhaustive order comparison ----


def _ordered_baseline_iterations(case: MatrixCase, config: SeekerConfig) -> int:
    """Iterations of the natural-order heuristic, taking the better of the
    two build strategies."""
    n = case.matrix.n
    perm = list(range(1, n + 1))
    best = math.inf
    for build in ("build1", "build2"):
        result = seek(ExactHessianOracle(case.matrix), build_order(perm, build), config)
        best = min(best, result.iterations)
    return int(best)


def ordered_vs_best(
    cases: Sequence[MatrixCase],
    mode: str = "perm_x_build",
    config: SeekerConfig | None = None,
) -> ComparisonResult:
    """For each case, compare the natural-order baseline against the best
    order from exhaustive enumeration. Gaps are >= 0 by construction."""
    cfg = config or SeekerConfig()
    gaps: dict[str, int] = {}
    best_its: dict[str, int] = {}
    ordered_its: dict[str, int] = {}
    for case in cases:
        best = math.inf
        for order in enumerate_orders(case.matrix.n, mode):
            result = seek(ExactHessianOracle(case.matrix), order, cfg)
            best = min(best, result.iterations)
            # 0 iterations means a negative diagonal (order-independent), so
            # once any order reaches 1 no other order can do better
            if best <= 1:
                break
        ordered = _ordered_baseline_iterations(case, cfg)
        best_its[case.id] = int(best)
        ordered_its[case.id] = ordered
        gaps[case.id] = ordered - int(best)
    return ComparisonResult(mode=mode, gaps=gaps, best_iterations=best_its, ordered_iterations=ordered_its)


# ---- report emission ----

CSV_COLUMNS = ["case_id", "variant", "status", "iterations", "lambda", "oracle_cost", "n", "transform", "h"]


def write_records_csv(records: Sequence[BenchRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.case_id,
                    r.variant,
                    r.status,
                    r.iterations,
                    repr(float(r.lam)),
                    r.oracle_cost,
                    r.n,
                    r.transform,
                    "" if r.h is None else repr(float(r.h)),
                ]
            )


def write_summary_json(summary: dict, path) -> None:
    Path(path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
