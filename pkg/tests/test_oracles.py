import math

import numpy as np
import pytest

from negcurv import (
    EvaluationError,
    ExactHessianOracle,
    FDOracle,
    SymMatrix,
    error_bound,
    fd_diagonal,
    fd_full_hessian,
    fd_offdiagonal,
)
from negcurv.functions import (
    ExpCoupling,
    ProductCoupling,
    QuadraticForm,
    SumOfCubes,
    SumOfSquares,
    make_function,
)


class CountingFunction:
    """Wraps a callable and counts raw evaluations."""

    def __init__(self, dim, fn):
        self.dim = dim
        self.fn = fn
        self.calls = 0

    def __call__(self, x):
        self.calls += 1
        return self.fn(np.asarray(x, dtype=float))


class TestExactOracle:
    def test_values(self):
        A = SymMatrix.from_array([[1, 2], [2, 3]])
        oracle = ExactHessianOracle(A)
        assert oracle.diagonal(2) == 3.0
        assert oracle.offdiagonal(2, 1) == 2.0

    def test_cost_counts_distinct_coordinates(self):
        oracle = ExactHessianOracle(SymMatrix.from_array([[1, 2], [2, 3]]))
        oracle.offdiagonal(2, 1)
        oracle.offdiagonal(2, 1)
        assert oracle.cost() == 1
        oracle.diagonal(1)
        assert oracle.cost() == 2

    def test_rejects_upper_coordinate(self):
        oracle = ExactHessianOracle(SymMatrix.identity(3))
        with pytest.raises(ValueError):
            oracle.offdiagonal(1, 2)


class TestFdFormulas:
    def test_diagonal_exact_for_square(self):
        f = CountingFunction(2, lambda x: float(x[0] ** 2 + x[1] ** 2))
        for h in (1e-1, 1e-2):
            assert fd_diagonal(f, [0.3, -0.7], h, 1) == pytest.approx(2.0, abs=1e-10)

    def test_diagonal_cube(self):
        # (1+h)^3 + (1-h)^3 - 2 = 6h^2 exactly, so the quotient is 6
        f = CountingFunction(1, lambda x: float(x[0] ** 3))
        assert fd_diagonal(f, [1.0], 0.05, 1) == pytest.approx(6.0, abs=1e-9)

    def test_diagonal_constant(self):
        f = CountingFunction(3, lambda x: 4.2)
        assert fd_diagonal(f, [1.0, 2.0, 3.0], 0.1, 2) == 0.0

    def test_offdiagonal_bilinear(self):
        f = CountingFunction(2, lambda x: float(x[0] * x[1]))
        assert fd_offdiagonal(f, [0.4, 1.3], 0.07, 2, 1) == pytest.approx(1.0, abs=1e-9)

    def test_offdiagonal_separable_is_zero(self):
        f = CountingFunction(2, lambda x: float(x[0] ** 2 + x[1] ** 2))
        assert fd_offdiagonal(f, [1.0, -2.0], 0.1, 2, 1) == pytest.approx(0.0, abs=1e-12)

    def test_offdiagonal_exp_value(self):
        f = ExpCoupling(2)
        expected = (math.exp(0.2) - 2 * math.exp(0.1) + 1) / 0.01
        got = fd_offdiagonal(f, [0.0, 0.0], 0.1, 2, 1)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(1.10609, abs=1e-5)

    def test_requires_positive_h(self):
        with pytest.raises(ValueError):
            FDOracle(SumOfSquares(2), [0.0, 0.0], 0.0)

    def test_nonfinite_value_raises(self):
        f = CountingFunction(2, lambda x: float("nan"))
        oracle = FDOracle(f, [0.0, 0.0], 0.1)
        with pytest.raises(EvaluationError):
            oracle.diagonal(1)


class TestFullHessian:
    def test_quadratic_exactness(self):
        rng = np.random.default_rng(5)
        Q = SymMatrix.from_array(rng.normal(size=(4, 4)))
        f = QuadraticForm(Q, b=rng.normal(size=4))
        for h in (1e-3, 1e-1):
            H = fd_full_hessian(f, rng.normal(size=4), h)
            assert np.all(
                np.abs(H.array - Q.array) <= 1e-6 * (1 + np.abs(Q.array))
            )

    def test_evaluation_counts(self):
        f = SumOfSquares(10)
        oracle = FDOracle(f, np.zeros(10), 1e-2)
        oracle.full_matrix()
        assert oracle.cost() == 65  # 2n + n(n-1)/2 for n=10
        assert oracle.total_cost() == 66

    def test_cold_cache_n2(self):
        f = CountingFunction(2, lambda x: float(x @ x))
        oracle = FDOracle(f, np.zeros(2), 0.1)
        oracle.full_matrix()
        assert oracle.total_cost() == 6
        assert f.calls == 6

    def test_replayed_queries_cost_nothing(self):
        f = CountingFunction(3, lambda x: float(x @ x))
        oracle = FDOracle(f, np.ones(3), 0.1)
        oracle.full_matrix()
        cost = oracle.cost()
        calls = f.calls
        oracle.full_matrix()
        oracle.offdiagonal(3, 1)
        assert oracle.cost() == cost
        assert f.calls == calls


class TestErrorBound:
    def test_unit_case(self):
        assert error_bound(1, 1.0, 1.0) == pytest.approx(5.0 / 3.0)

    def test_composite(self):
        assert error_bound(4, 3.0, 0.1) == pytest.approx(1.0)

    def test_zero_lipschitz(self):
        assert error_bound(6, 0.0, 0.5) == 0.0

    def test_input_validation(self):
        with pytest.raises(ValueError):
            error_bound(0, 1.0, 1.0)
        with pytest.raises(ValueError):
            error_bound(2, -1.0, 1.0)

    @pytest.mark.parametrize("n", range(2, 9))
    @pytest.mark.parametrize("h", [1e-2, 1e-4])
    def test_cubic_family_obeys_bound(self, n, h):
        f = SumOfCubes(n)
        rng = np.random.default_rng(100 * n)
        x = rng.uniform(-1, 1, size=n)
        H = fd_full_hessian(f, x, h)
        true = f.true_hessian(x)
        bound = error_bound(n, f.hessian_lipschitz_constant(), h)
        assert np.linalg.norm(true - H.array, 2) <= bound
        gap = abs(np.linalg.eigvalsh(true)[0] - np.linalg.eigvalsh(H.array)[0])
        assert gap <= bound


class TestRegistry:
    def test_names_and_hessians(self):
        x = np.array([0.2, -0.4, 0.6])
        for name in ("sum-of-squares", "sum-of-cubes", "product-coupling", "exp-coupling"):
            f = make_function(name, 3)
            H = fd_full_hessian(f, x, 1e-4)
            assert np.allclose(H.array, f.true_hessian(x), atol=1e-3)

    def test_product_coupling_value(self):
        f = ProductCoupling(3)
        assert f(np.array([1.0, 2.0, 3.0])) == pytest.approx(1 * 2 + 1 * 3 + 2 * 3)

    def test_quadratic_from_file(self, tmp_path):
        path = tmp_path / "q.txt"
        path.write_text("2\n1 -2\n-2 1\n")
        f = make_function("quadratic:%s" % path)
        assert f.dim == 2
        assert f(np.array([1.0, 0.0])) == pytest.approx(0.5)

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            make_function("no-such-function", 2)

    def test_missing_dimension(self):
        with pytest.raises(ValueError):
            make_function("sum-of-squares")
