"""Built-in analytic blackbox functions with known Hessians.

These serve as reproducible stand-ins for external objective functions:
each one's true Hessian is available in closed form for validation.

Registry names (stable CLI strings):
    sum-of-squares      f(x) = sum x_i^2
    sum-of-cubes        f(x) = sum x_i^3
    product-coupling    f(x) = sum_{i<j} x_i x_j
    exp-coupling        f(x) = exp(sum x_i)
    quadratic:PATH      f(x) = 0.5 x^T Q x with Q loaded from PATH
"""

from __future__ import annotations

import numpy as np

from .matrices import SymMatrix
from .oracles import BlackboxFunction

__all__ = [
    "SumOfSquares",
    "SumOfCubes",
    "ProductCoupling",
    "ExpCoupling",
    "QuadraticForm",
    "make_function",
    "REGISTRY",
]


class SumOfSquares(BlackboxFunction):
    def __init__(self, dim: int):
        self.dim = int(dim)

    def __call__(self, x):
        return float(np.sum(np.asarray(x) ** 2))

    def true_hessian(self, x) -> np.ndarray:
        return 2.0 * np.eye(self.dim)


class SumOfCubes(BlackboxFunction):
    def __init__(self, dim: int):
        self.dim = int(dim)

    def __call__(self, x):
        return float(np.sum(np.asarray(x) ** 3))

    def true_hessian(self, x) -> np.ndarray:
        return np.diag(6.0 * np.asarray(x, dtype=float))

    def hessian_lipschitz_constant(self) -> float:
        # || diag(6y) - diag(6z) || = 6 max|y_k - z_k| <= 6 ||y - z||
        return 6.0


class ProductCoupling(BlackboxFunction):
    """Sum of all pairwise products x_i x_j, i < j."""

    def __init__(self, dim: int):
        self.dim = int(dim)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        s = float(np.sum(x))
        return 0.5 * (s * s - float(np.sum(x * x)))

    def true_hessian(self, x) -> np.ndarray:
        return np.ones((self.dim, self.dim)) - np.eye(self.dim)


class ExpCoupling(BlackboxFunction):
    """exp of the coordinate sum; Hessian is exp(sum x) times all-ones."""

    def __init__(self, dim: int):
        self.dim = int(dim)

    def __call__(self, x):
        return float(np.exp(np.sum(np.asarray(x))))

    def true_hessian(self, x) -> np.ndarray:
        return float(np.exp(np.sum(np.asarray(x)))) * np.ones((self.dim, self.dim))


class QuadraticForm(BlackboxFunction):
    """f(x) = 0.5 x^T Q x + b^T x for a symmetric Q."""

    def __init__(self, Q: SymMatrix, b=None):
        self.Q = Q
        self.dim = Q.n
        self.b = np.zeros(Q.n) if b is None else np.asarray(b, dtype=float)
        if self.b.shape != (Q.n,):
            raise ValueError("linear term has wrong shape")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return float(0.5 * x @ self.Q.array @ x + self.b @ x)

    def true_hessian(self, x) -> np.ndarray:
        return np.array(self.Q.array)


REGISTRY = {
    "sum-of-squares": SumOfSquares,
    "sum-of-cubes": SumOfCubes,
    "product-coupling": ProductCoupling,
    "exp-coupling": ExpCoupling,
}


def make_function(name: str, dim: int | None = None) -> BlackboxFunction:
    """Look up a registry function by its stable name.

    "quadratic:PATH" loads the matrix at PATH (format sniffed) and ignores
    `dim`; the other names require `dim`.
    """
    if name.startswith("quadratic:"):
        from .bench import load_matrix

        return QuadraticForm(load_matrix(name[len("quadratic:"):]))
    try:
        factory = REGISTRY[name]
    except KeyError:
        raise ValueError(
            "unknown function %r (choices: %s, quadratic:PATH)"
            % (name, ", ".join(sorted(REGISTRY)))
        ) from None
    if dim is None:
        raise ValueError("function %r needs a dimension" % name)
    return factory(dim)
