"""Coordinate-selection orders: diagonal-driven permutation heuristics,
two build strategies turning a permutation into a pair order, and
exhaustive enumeration for small dimensions.

A selection order is a list of (i, j) pairs with i > j (1-based) covering
every unordered pair exactly once.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "HEURISTICS",
    "BUILDS",
    "ALL_VARIANTS",
    "VariantSpec",
    "heuristic_permutation",
    "build1_order",
    "build2_order",
    "build_order",
    "selection_order",
    "all_pairs",
    "validate_order",
    "enumerate_orders",
]

HEURISTICS = ("ordered", "s2lde", "l2sde", "ide")
BUILDS = ("build1", "build2")


@dataclass(frozen=True)
class VariantSpec:
    """One (heuristic, build) combination; 8 in total."""

    heuristic: str
    build: str

    def __post_init__(self):
        if self.heuristic not in HEURISTICS:
            raise ValueError("unknown heuristic %r" % (self.heuristic,))
        if self.build not in BUILDS:
            raise ValueError("unknown build %r" % (self.build,))

    @property
    def name(self) -> str:
        return "%s-%s" % (self.heuristic, self.build)


ALL_VARIANTS = tuple(
    VariantSpec(h, b) for b in BUILDS for h in HEURISTICS
)


def heuristic_permutation(diag: Sequence[float], heuristic: str) -> list[int]:
    """Permutation of 1..n derived from the diagonal values.

    ordered: natural order. s2lde: indices sorting the diagonal ascending.
    l2sde: descending. ide: the s2lde permutation with its extremes
    interleaved (first, last, second, second-last, ...). Ties break toward
    the smaller original index (stable sort).
    """
    diag = np.asarray(diag, dtype=float)
    n = diag.shape[0]
    if n < 1:
        raise ValueError("diagonal must be nonempty")
    if heuristic == "ordered":
        return list(range(1, n + 1))
    asc = [int(k) + 1 for k in np.argsort(diag, kind="stable")]
    if heuristic == "s2lde":
        return asc
    if heuristic == "l2sde":
        # descending, smaller index first among ties
        order = sorted(range(n), key=lambda k: (-diag[k], k))
        return [k + 1 for k in order]
    if heuristic == "ide":
        q = deque(asc)
        out = []
        while q:
            out.append(q.popleft())
            if q:
                out.append(q.pop())
        return out
    raise ValueError("unknown heuristic %r" % (heuristic,))


def _validate_permutation(perm: Sequence[int]) -> list[int]:
    p = [int(v) for v in perm]
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (len(p), perm))
    return p


def _norm(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a > b else (b, a)


def build1_order(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Row-at-a-time order: complete all pairs involving p1, then p2, ..."""
    p = _validate_permutation(perm)
    n = len(p)
    return [_norm(p[k], p[l]) for k in range(n - 1) for l in range(k + 1, n)]


def build2_order(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Outward-from-the-diagonal order: for each new index p_k, connect it
    back to p_{k-1}, p_{k-2}, ..., p_1, growing one submatrix."""
    p = _validate_permutation(perm)
    n = len(p)
    return [_norm(p[k], p[l]) for k in range(1, n) for l in range(k - 1, -1, -1)]


def build_order(perm: Sequence[int], build: str) -> list[tuple[int, int]]:
    if build == "build1":
        return build1_order(perm)
    if build == "build2":
        return build2_order(perm)
    raise ValueError("unknown build %r" % (build,))


def selection_order(diag: Sequence[float], variant: VariantSpec) -> list[tuple[int, int]]:
    """Pair order for one variant given the matrix diagonal."""
    return build_order(heuristic_permutation(diag, variant.heuristic), variant.build)


def all_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(2, n + 1) for j in range(1, i)]


def validate_order(order: Sequence[tuple[int, int]], n: int) -> None:
    """Check that `order` covers each unordered pair of 1..n exactly once,
    normalized to (i, j) with i > j."""
    want = set(all_pairs(n))
    got = list(order)
    if len(got) != len(want) or set(got) != want:
        raise ValueError("order does not cover the %d pairs of 1..%d exactly once" % (len(want), n))
    for i, j in got:
        if not i > j:
            raise ValueError("pair %r not normalized to (i, j) with i > j" % ((i, j),))


def enumerate_orders(n: int, mode: str) -> Iterator[list[tuple[int, int]]]:
    """Stream selection orders for exhaustive comparison.

    mode "perm_x_build" (n <= 10): build1 and build2 of every permutation,
    deduplicated. mode "all_pair_orders" (n <= 4): every permutation of the
    n(n-1)/2 pairs.
    """
    if n < 2:
        raise ValueError("enumeration needs n >= 2")
    if mode == "perm_x_build":
        if n > 10:
            raise ValueError(
                "perm_x_build infeasible at n=%d (%d candidate orders)"
                % (n, 2 * math.factorial(n))
            )
        return _perm_x_build(n)
    if mode == "all_pair_orders":
        m = n * (n - 1) // 2
        if n > 4:
            raise ValueError(
                "all_pair_orders infeasible at n=%d (%d! = %d orders)"
                % (n, m, math.factorial(m))
            )
        return (list(o) for o in itertools.permutations(all_pairs(n)))
    raise ValueError("unknown mode %r" % (mode,))


def _perm_x_build(n: int) -> Iterator[list[tuple[int, int]]]:
    seen: set[tuple] = set()
    for perm in itertools.permutations(range(1, n + 1)):
        for builder in (build1_order, build2_order):
            order = builder(perm)
            key = tuple(order)
            if key not in seen:
                seen.add(key)
                yield order
