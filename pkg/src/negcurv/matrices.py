"""Dense symmetric matrix storage and small-matrix eigenvalue utilities.

Matrix indices are 1-based throughout the public API.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "SymMatrix",
    "validate_index_set",
    "principal_submatrix",
    "min_eigenvalue",
    "interlacing_check",
]


class SymMatrix:
    """Real symmetric matrix with one physical slot per unordered pair.

    Entries (i, j) and (j, i) share storage, so symmetry holds by
    construction and cannot be broken by mutation. All entries must be
    finite.
    """

    __slots__ = ("n", "_packed", "_array")

    def __init__(self, n: int, packed):
        n = int(n)
        if n < 1:
            raise ValueError("dimension must be >= 1")
        packed = np.asarray(packed, dtype=float)
        if packed.shape != (n * (n + 1) // 2,):
            raise ValueError(
                "packed storage must have length n(n+1)/2 = %d" % (n * (n + 1) // 2)
            )
        if not np.all(np.isfinite(packed)):
            raise ValueError("matrix entries must be finite")
        self.n = n
        self._packed = packed
        self._array: np.ndarray | None = None

    # ---- constructors ----

    @classmethod
    def from_array(cls, arr) -> "SymMatrix":
        """Build from a square array, symmetrizing via (M + M^T)/2."""
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("matrix must be square")
        n = arr.shape[0]
        sym = 0.5 * (arr + arr.T)
        return cls(n, sym[np.tril_indices(n)])

    @classmethod
    def from_diagonal(cls, values) -> "SymMatrix":
        values = np.asarray(values, dtype=float)
        return cls.from_array(np.diag(values))

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls.from_array(np.eye(n))

    # ---- accessors ----

    @staticmethod
    def _slot(i: int, j: int) -> int:
        # lower-triangle row-major; i, j are 1-based
        if i < j:
            i, j = j, i
        return i * (i - 1) // 2 + (j - 1)

    def _check_index(self, i: int) -> None:
        if not (1 <= i <= self.n):
            raise ValueError("index %r out of range 1..%d" % (i, self.n))

    def entry(self, i: int, j: int) -> float:
        self._check_index(i)
        self._check_index(j)
        return float(self._packed[self._slot(i, j)])

    def diag(self) -> np.ndarray:
        idx = np.array([self._slot(i, i) for i in range(1, self.n + 1)])
        return self._packed[idx].copy()

    @property
    def array(self) -> np.ndarray:
        """Full n x n ndarray view (read-only, cached)."""
        if self._array is None:
            full = np.zeros((self.n, self.n))
            rows, cols = np.tril_indices(self.n)
            full[rows, cols] = self._packed
            full[cols, rows] = self._packed
            full.setflags(write=False)
            self._array = full
        return self._array

    def spectral_norm(self) -> float:
        return float(np.linalg.norm(self.array, 2))

    def __repr__(self) -> str:
        return "SymMatrix(n=%d)" % self.n


def validate_index_set(indices, n: int) -> tuple[int, ...]:
    """Check a 1-based row/column selection: nonempty, strictly increasing,
    within 1..n. Returns it as a tuple of ints."""
    out = tuple(int(i) for i in indices)
    if len(out) == 0:
        raise ValueError("index set must be nonempty")
    for i in out:
        if not (1 <= i <= n):
            raise ValueError("index %d out of range 1..%d" % (i, n))
    for a, b in zip(out, out[1:]):
        if b <= a:
            raise ValueError("index set must be strictly increasing")
    return out


def principal_submatrix(A: SymMatrix, indices) -> SymMatrix:
    """Submatrix keeping the given rows and matching columns of A."""
    sel = validate_index_set(indices, A.n)
    idx = np.array(sel) - 1
    return SymMatrix.from_array(A.array[np.ix_(idx, idx)])


def min_eigenvalue(A: SymMatrix, tol: float = 1e-10) -> float:
    """Smallest eigenvalue of A.

    `tol` is the required relative accuracy with respect to the spectral
    norm; the dense LAPACK solve used here is accurate to machine precision,
    well inside any sensible tolerance. Deterministic for fixed input.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr = A.array
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return float(np.linalg.eigvalsh(arr)[0])


def interlacing_check(A: SymMatrix, indices, slack: float = 1e-8) -> bool:
    """True iff the eigenvalues of the principal submatrix on `indices`
    interlace those of A within `slack` (test-support operation)."""
    sel = validate_index_set(indices, A.n)
    lam = np.linalg.eigvalsh(A.array)
    idx = np.array(sel) - 1
    beta = np.linalg.eigvalsh(A.array[np.ix_(idx, idx)])
    n, m = A.n, len(sel)
    for k in range(m):
        if not (lam[k] - slack <= beta[k] <= lam[k + n - m] + slack):
            return False
    return True
