import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negcurv import (
    ALL_VARIANTS,
    VariantSpec,
    build1_order,
    build2_order,
    enumerate_orders,
    heuristic_permutation,
    selection_order,
)
from negcurv.ordering import all_pairs, validate_order

BUILD1_N4_ORDER = [(2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (4, 3)]
BUILD2_N4_ORDER = [(2, 1), (3, 2), (3, 1), (4, 3), (4, 2), (4, 1)]


class TestHeuristics:
    def test_ordered(self):
        assert heuristic_permutation([9.0, 1.0, 5.0, 2.0], "ordered") == [1, 2, 3, 4]

    def test_s2lde(self):
        assert heuristic_permutation([3.0, 1.0, 2.0], "s2lde") == [2, 3, 1]

    def test_l2sde(self):
        assert heuristic_permutation([3.0, 1.0, 2.0], "l2sde") == [1, 3, 2]

    def test_ide(self):
        assert heuristic_permutation([3.0, 1.0, 2.0], "ide") == [2, 1, 3]

    def test_ide_even_length(self):
        # s2lde temp is [2, 4, 3, 1]; interleave front/back
        assert heuristic_permutation([4.0, 1.0, 3.0, 2.0], "ide") == [2, 1, 4, 3]

    def test_ties_break_to_smaller_index(self):
        assert heuristic_permutation([1.0, 1.0, 0.5], "s2lde") == [3, 1, 2]
        assert heuristic_permutation([1.0, 1.0, 0.5], "l2sde") == [1, 2, 3]

    def test_s2lde_l2sde_are_reverses_without_ties(self):
        diag = [0.3, -1.2, 2.0, 0.9]
        asc = heuristic_permutation(diag, "s2lde")
        desc = heuristic_permutation(diag, "l2sde")
        assert asc == desc[::-1]

    def test_unknown_heuristic(self):
        with pytest.raises(ValueError):
            heuristic_permutation([1.0], "fancy")

    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=9), st.sampled_from(["ordered", "s2lde", "l2sde", "ide"]))
    @settings(max_examples=200, deadline=None)
    def test_always_a_bijection(self, diag, heuristic):
        perm = heuristic_permutation(diag, heuristic)
        assert sorted(perm) == list(range(1, len(diag) + 1))


class TestBuilds:
    def test_build1_n4_golden(self):
        assert build1_order([1, 2, 3, 4]) == BUILD1_N4_ORDER

    def test_build2_n4_golden(self):
        assert build2_order([1, 2, 3, 4]) == BUILD2_N4_ORDER

    def test_single_pair(self):
        assert build1_order([1, 2]) == [(2, 1)]
        assert build2_order([1, 2]) == [(2, 1)]

    def test_build1_permuted(self):
        assert build1_order([2, 1, 3]) == [(2, 1), (3, 2), (3, 1)]

    def test_build2_permuted(self):
        assert build2_order([3, 1, 2]) == [(3, 1), (2, 1), (3, 2)]

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            build1_order([1, 1, 3])

    @given(st.permutations(list(range(1, 8))))
    @settings(max_examples=100, deadline=None)
    def test_full_pair_coverage(self, perm):
        n = len(perm)
        for order in (build1_order(perm), build2_order(perm)):
            validate_order(order, n)


class TestVariants:
    def test_eight_variants(self):
        assert len(ALL_VARIANTS) == 8
        assert len({v.name for v in ALL_VARIANTS}) == 8

    def test_bad_variant(self):
        with pytest.raises(ValueError):
            VariantSpec("fast", "build1")

    def test_selection_order_covers(self):
        diag = [5.0, -1.0, 3.0, 0.0, 2.0]
        for variant in ALL_VARIANTS:
            validate_order(selection_order(diag, variant), 5)


class TestEnumeration:
    def test_n2_single_order(self):
        for mode in ("perm_x_build", "all_pair_orders"):
            assert list(enumerate_orders(2, mode)) == [[(2, 1)]]

    def test_n3_all_pair_orders(self):
        orders = list(enumerate_orders(3, "all_pair_orders"))
        assert len(orders) == 6
        assert len({tuple(o) for o in orders}) == 6

    def test_n4_all_pair_orders_count(self):
        assert sum(1 for _ in enumerate_orders(4, "all_pair_orders")) == math.factorial(6)

    def test_n4_perm_x_build_dedup(self):
        orders = [tuple(o) for o in enumerate_orders(4, "perm_x_build")]
        assert len(orders) == len(set(orders))
        assert len(orders) <= 48
        for o in orders:
            validate_order(o, 4)

    def test_perm_x_build_contains_both_builds(self):
        orders = {tuple(o) for o in enumerate_orders(4, "perm_x_build")}
        for perm in itertools.permutations(range(1, 5)):
            assert tuple(build1_order(perm)) in orders
            assert tuple(build2_order(perm)) in orders

    def test_infeasible_sizes_rejected(self):
        with pytest.raises(ValueError, match="10!"):
            enumerate_orders(5, "all_pair_orders")
        with pytest.raises(ValueError):
            enumerate_orders(11, "perm_x_build")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            enumerate_orders(3, "everything")


class TestValidateOrder:
    def test_accepts_all_pairs(self):
        validate_order(all_pairs(5), 5)

    def test_rejects_missing_pair(self):
        with pytest.raises(ValueError):
            validate_order([(2, 1)], 3)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            validate_order([(1, 2)], 2)
