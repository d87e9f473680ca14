"""Coefficient-level access to Hessians: exact from a stored matrix, or via
finite differences of a blackbox function, with exact evaluation accounting.

Matrix indices are 1-based. Off-diagonal coordinates are normalized to
(i, j) with i > j.
"""

from __future__ import annotations

import abc
import math

import numpy as np

from .matrices import SymMatrix

__all__ = [
    "EvaluationError",
    "HessianOracle",
    "ExactHessianOracle",
    "BlackboxFunction",
    "FDOracle",
    "fd_diagonal",
    "fd_offdiagonal",
    "fd_full_hessian",
    "error_bound",
]


class EvaluationError(RuntimeError):
    """A blackbox evaluation returned a non-finite value or failed."""


class HessianOracle(abc.ABC):
    """Samples a symmetric matrix one coefficient at a time.

    Repeated queries of the same coordinate return the identical value and
    incur no additional cost.
    """

    dim: int

    @abc.abstractmethod
    def diagonal(self, i: int) -> float:
        """Value of entry (i, i)."""

    @abc.abstractmethod
    def offdiagonal(self, i: int, j: int) -> float:
        """Value of entry (i, j); requires i > j."""

    @abc.abstractmethod
    def cost(self) -> int:
        """Evaluations consumed so far (see subclasses for the unit)."""

    def _check_pair(self, i: int, j: int) -> None:
        if not (1 <= j < i <= self.dim):
            raise ValueError("off-diagonal coordinate needs 1 <= j < i <= n, got (%r, %r)" % (i, j))


class ExactHessianOracle(HessianOracle):
    """Oracle backed by a stored symmetric matrix.

    cost() counts distinct coordinates revealed (1 per diagonal or
    off-diagonal query).
    """

    def __init__(self, matrix: SymMatrix):
        self.matrix = matrix
        self.dim = matrix.n
        self._seen: set[tuple[int, int]] = set()

    def diagonal(self, i: int) -> float:
        if not (1 <= i <= self.dim):
            raise ValueError("index %r out of range" % (i,))
        self._seen.add((i, i))
        return self.matrix.entry(i, i)

    def offdiagonal(self, i: int, j: int) -> float:
        self._check_pair(i, j)
        self._seen.add((i, j))
        return self.matrix.entry(i, j)

    def cost(self) -> int:
        return len(self._seen)


class BlackboxFunction(abc.ABC):
    """A deterministic scalar function of a point in R^n."""

    dim: int

    @abc.abstractmethod
    def __call__(self, x: np.ndarray) -> float:
        """Evaluate at x (length-dim array)."""


# Symbolic cache keys for finite-difference sample points. Keyed by
# index/sign descriptors, never by floating-point coordinates, so float
# arithmetic cannot split cache hits.
_BASE = ("0",)


class FDOracle(HessianOracle):
    """Finite-difference Hessian oracle for a blackbox function at a point.

    Diagonal entries use the central second difference
    (f(x+he_i) - 2 f(x) + f(x-he_i)) / h^2; off-diagonal entries use
    (f(x+he_i+he_j) - f(x+he_i) - f(x+he_j) + f(x)) / h^2 for i > j.

    cost() counts distinct evaluations *excluding* the base point f(x),
    which is accounted separately (total_cost() includes it).
    """

    def __init__(self, f: BlackboxFunction, x, h: float):
        if h <= 0:
            raise ValueError("finite-difference step h must be positive")
        x = np.asarray(x, dtype=float)
        if x.shape != (f.dim,):
            raise ValueError("point has shape %r, expected (%d,)" % (x.shape, f.dim))
        self.f = f
        self.x = x
        self.h = float(h)
        self.dim = f.dim
        self._cache: dict[tuple, float] = {}

    def _point(self, key: tuple) -> np.ndarray:
        p = self.x.copy()
        if key == _BASE:
            return p
        tag = key[0]
        if tag == "+":
            p[key[1] - 1] += self.h
        elif tag == "-":
            p[key[1] - 1] -= self.h
        elif tag == "++":
            p[key[1] - 1] += self.h
            p[key[2] - 1] += self.h
        else:  # pragma: no cover - internal keys only
            raise ValueError("bad descriptor %r" % (key,))
        return p

    def _eval(self, key: tuple) -> float:
        if key not in self._cache:
            val = float(self.f(self._point(key)))
            if not math.isfinite(val):
                raise EvaluationError(
                    "blackbox returned non-finite value %r at offset %r" % (val, key)
                )
            self._cache[key] = val
        return self._cache[key]

    def diagonal(self, i: int) -> float:
        if not (1 <= i <= self.dim):
            raise ValueError("index %r out of range" % (i,))
        h = self.h
        return (self._eval(("+", i)) - 2.0 * self._eval(_BASE) + self._eval(("-", i))) / (h * h)

    def offdiagonal(self, i: int, j: int) -> float:
        self._check_pair(i, j)
        h = self.h
        return (
            self._eval(("++", i, j))
            - self._eval(("+", i))
            - self._eval(("+", j))
            + self._eval(_BASE)
        ) / (h * h)

    def cost(self) -> int:
        return len(self._cache) - (1 if _BASE in self._cache else 0)

    def total_cost(self) -> int:
        """Distinct evaluations including the base point."""
        return len(self._cache)

    def full_matrix(self) -> SymMatrix:
        """Assemble the entire finite-difference Hessian estimate."""
        n = self.dim
        full = np.zeros((n, n))
        for i in range(1, n + 1):
            full[i - 1, i - 1] = self.diagonal(i)
            for j in range(1, i):
                full[i - 1, j - 1] = full[j - 1, i - 1] = self.offdiagonal(i, j)
        return SymMatrix.from_array(full)


def fd_diagonal(f: BlackboxFunction, x, h: float, i: int) -> float:
    """Central second-difference estimate of the (i, i) Hessian entry."""
    return FDOracle(f, x, h).diagonal(i)


def fd_offdiagonal(f: BlackboxFunction, x, h: float, i: int, j: int) -> float:
    """Four-point estimate of the (i, j) Hessian entry, i > j."""
    return FDOracle(f, x, h).offdiagonal(i, j)


def fd_full_hessian(f: BlackboxFunction, x, h: float) -> SymMatrix:
    """Full finite-difference Hessian estimate at x.

    From a cold cache this consumes 1 + 2n + n(n-1)/2 distinct evaluations
    (2n + n(n-1)/2 excluding f(x)).
    """
    return FDOracle(f, x, h).full_matrix()


def error_bound(n: int, L: float, h: float) -> float:
    """Spectral-norm bound (5/3) sqrt(n) L h on the finite-difference
    Hessian error, valid when the true Hessian is L-Lipschitz on the open
    ball of radius h around x. Also bounds the minimum-eigenvalue gap."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if L < 0:
        raise ValueError("Lipschitz constant must be nonnegative")
    if h < 0:
        raise ValueError("h must be nonnegative")
    return (5.0 / 3.0) * math.sqrt(n) * L * h
