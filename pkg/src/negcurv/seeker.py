"""Incremental negative-eigenvalue detection.

The seeker reveals a symmetric matrix one off-diagonal coefficient at a
time (in a caller-supplied order), tracks which principal submatrices are
fully known via a fill graph, and stops as soon as some fully revealed
principal submatrix has an eigenvalue below -epsilon. By eigenvalue
interlacing this certifies a negative eigenvalue of the full matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .matrices import SymMatrix
from .oracles import EvaluationError, HessianOracle, error_bound
from .ordering import validate_order

__all__ = [
    "Status",
    "SeekerConfig",
    "FillGraph",
    "PartialHessian",
    "SeekerResult",
    "maximal_cliques_with_edge",
    "seek",
    "descent_direction",
    "certified_upper_bound",
]


class Status(enum.Enum):
    DIAGONAL_NEGATIVE = "diagonal_negative"
    NEGATIVE_FOUND = "negative_found"
    EXHAUSTED = "exhausted"


@dataclass
class SeekerConfig:
    epsilon: float = 0.0
    eig_tol: float = 1e-10
    track_global_min: bool = False

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")


class FillGraph:
    """Graph of revealed off-diagonal coordinates: one vertex per index,
    one edge per revealed unordered pair."""

    def __init__(self, n: int):
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n + 1)]
        self._edges: set[tuple[int, int]] = set()

    def add_edge(self, i: int, j: int) -> None:
        if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError("bad edge (%r, %r)" % (i, j))
        self._adj[i].add(j)
        self._adj[j].add(i)
        self._edges.add((max(i, j), min(i, j)))

    def has_edge(self, i: int, j: int) -> bool:
        return (max(i, j), min(i, j)) in self._edges

    def neighbors(self, i: int) -> set[int]:
        return self._adj[i]

    def edges(self) -> set[tuple[int, int]]:
        return set(self._edges)

    def edge_count(self) -> int:
        return len(self._edges)


class PartialHessian:
    """The partially revealed matrix: full diagonal plus a growing set of
    off-diagonal entries. Unrevealed entries are semantically zero."""

    def __init__(self, diag):
        diag = np.asarray(diag, dtype=float)
        self.n = diag.shape[0]
        self.diag = diag
        self.offdiag: dict[tuple[int, int], float] = {}
        self.graph = FillGraph(self.n)
        self._mat = np.diag(diag)

    def reveal(self, i: int, j: int, value: float) -> None:
        if not (1 <= j < i <= self.n):
            raise ValueError("reveal needs 1 <= j < i <= n")
        self.offdiag[(i, j)] = float(value)
        self._mat[i - 1, j - 1] = self._mat[j - 1, i - 1] = float(value)
        self.graph.add_edge(i, j)

    @property
    def iterations(self) -> int:
        return len(self.offdiag)

    def is_complete(self) -> bool:
        return len(self.offdiag) == self.n * (self.n - 1) // 2

    def submatrix(self, indices: Sequence[int]) -> np.ndarray:
        """Dense submatrix on a set of indices whose pairs are all revealed."""
        for a, i in enumerate(indices):
            for j in list(indices)[:a]:
                if (max(i, j), min(i, j)) not in self.offdiag:
                    raise KeyError("pair (%d, %d) not revealed" % (max(i, j), min(i, j)))
        idx = np.asarray(indices) - 1
        return self._mat[np.ix_(idx, idx)]

    def _submatrix_unchecked(self, indices) -> np.ndarray:
        idx = np.asarray(indices) - 1
        return self._mat[np.ix_(idx, idx)]

    def to_symmatrix(self) -> SymMatrix:
        """Current state as a SymMatrix, zeros where unrevealed."""
        return SymMatrix.from_array(self._mat)


@dataclass
class SeekerResult:
    lam: float
    partial: PartialHessian
    iterations: int
    status: Status
    certificate: Optional[tuple[tuple[int, ...], np.ndarray]]
    oracle_cost: int
    global_min: Optional[float] = None
    variant: Optional[str] = None

    @property
    def found_negative(self) -> bool:
        """True when the run certified an eigenvalue below -epsilon."""
        return self.status in (Status.DIAGONAL_NEGATIVE, Status.NEGATIVE_FOUND) or (
            self.status is Status.EXHAUSTED and self._exhausted_negative
        )

    _exhausted_negative: bool = field(default=False, repr=False)

    def to_dict(self) -> dict:
        cert_idx = cert_vec = None
        if self.certificate is not None:
            cert_idx = list(self.certificate[0])
            cert_vec = [float(v) for v in self.certificate[1]]
        return {
            "lambda": float(self.lam),
            "iterations": int(self.iterations),
            "status": self.status.value,
            "found_negative": bool(self.found_negative),
            "certificate_indices": cert_idx,
            "certificate_vector": cert_vec,
            "oracle_cost": int(self.oracle_cost),
            "global_min": None if self.global_min is None else float(self.global_min),
            "variant": self.variant,
            "n": int(self.partial.n),
        }


def _bron_kerbosch(adj, clique, candidates, excluded, out):
    # pivoted Bron-Kerbosch on the induced subgraph described by adj
    if not candidates and not excluded:
        out.append(clique)
        return
    pivot = max(candidates | excluded, key=lambda v: len(adj[v] & candidates))
    for v in list(candidates - adj[pivot]):
        _bron_kerbosch(adj, clique | {v}, candidates & adj[v], excluded & adj[v], out)
        candidates.remove(v)
        excluded.add(v)


def maximal_cliques_with_edge(graph: FillGraph, i: int, j: int) -> list[tuple[int, ...]]:
    """All maximal cliques of the fill graph containing both i and j.

    These index the largest fully revealed principal submatrices that
    include entry (i, j); by interlacing, minimizing the smallest
    eigenvalue over them equals minimizing over *all* revealed principal
    submatrices containing that entry.
    """
    if not graph.has_edge(i, j):
        raise ValueError("edge (%r, %r) not present in the fill graph" % (i, j))
    common = graph.neighbors(i) & graph.neighbors(j)
    if not common:
        return [tuple(sorted((i, j)))]
    adj = {v: graph.neighbors(v) & common for v in common}
    found: list[set[int]] = []
    _bron_kerbosch(adj, set(), set(common), set(), found)
    return sorted(tuple(sorted({i, j} | k)) for k in found)


def seek(
    oracle: HessianOracle,
    order: Sequence[tuple[int, int]],
    config: SeekerConfig | None = None,
) -> SeekerResult:
    """Run the seeker loop over an oracle with a fixed selection order.

    Reveals the diagonal first; if its minimum is below -epsilon the run
    stops immediately with a singleton certificate. Otherwise pairs are
    revealed in order and, after each reveal, lambda is recomputed as the
    minimum eigenvalue over the maximal fully revealed submatrices
    containing the new entry (not a running minimum). The loop continues
    while lambda >= -epsilon and unrevealed pairs remain.
    """
    cfg = config or SeekerConfig()
    n = oracle.dim
    validate_order(order, n)

    diag = np.array([oracle.diagonal(i) for i in range(1, n + 1)])
    partial = PartialHessian(diag)

    k_min = int(np.argmin(diag))
    lam = float(diag[k_min])
    global_min = lam
    best_set: tuple[int, ...] = (k_min + 1,)

    if lam < -cfg.epsilon:
        cert = (best_set, np.array([1.0]))
        return SeekerResult(
            lam, partial, 0, Status.DIAGONAL_NEGATIVE, cert, oracle.cost(),
            global_min=global_min if cfg.track_global_min else None,
        )

    idx = 0
    try:
        while lam >= -cfg.epsilon and idx < len(order):
            i, j = order[idx]
            idx += 1
            partial.reveal(i, j, oracle.offdiagonal(i, j))
            lam = np.inf
            for S in maximal_cliques_with_edge(partial.graph, i, j):
                w = float(np.linalg.eigvalsh(partial._submatrix_unchecked(S))[0])
                if w < lam:
                    lam = w
                    best_set = S
            global_min = min(global_min, lam)
    except EvaluationError as err:
        err.partial = partial  # diagnostic state for the caller
        raise

    status = Status.EXHAUSTED if partial.is_complete() else Status.NEGATIVE_FOUND
    sub = partial.submatrix(best_set)
    w, vecs = np.linalg.eigh(sub)
    cert = (best_set, vecs[:, 0])
    return SeekerResult(
        lam, partial, partial.iterations, status, cert, oracle.cost(),
        global_min=global_min if cfg.track_global_min else None,
        _exhausted_negative=lam < -cfg.epsilon,
    )


def descent_direction(partial: PartialHessian, certificate) -> np.ndarray:
    """Embed a certificate eigenvector into R^n with zero padding.

    The returned d satisfies d^T H~ d = lambda ||d||^2 for the revealed
    matrix, so it is a direction of decrease at a first-order stationary
    point whenever lambda is sufficiently negative.
    """
    indices, c = certificate
    c = np.asarray(c, dtype=float)
    if len(indices) != c.shape[0]:
        raise ValueError("certificate index set and eigenvector disagree in length")
    d = np.zeros(partial.n)
    for k, i in enumerate(indices):
        if not (1 <= i <= partial.n):
            raise ValueError("certificate index %d out of range" % i)
        d[i - 1] = c[k]
    return d


def certified_upper_bound(result: SeekerResult, n: int, L: float, h: float) -> float:
    """Upper bound on the true minimum Hessian eigenvalue from an
    approximate-oracle run: lambda plus the finite-difference error bound.
    Pass L=0 or h=0 for exact oracles to recover the bound lambda itself."""
    return float(result.lam) + error_bound(n, L, h)
