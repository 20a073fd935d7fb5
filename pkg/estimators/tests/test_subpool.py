from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from estimators.exceptions import EnumerationLimitError, PreconditionError
from estimators.subpool import (
    avg_subpool_max_direct,
    avg_subpool_max_orderstat,
    b_matrix,
    combination_rank,
    combination_unrank,
    k_matrix,
    order_statistic_weights,
    subpool_max,
    v_coordinates,
    v_matrix,
)

F = Fraction

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)
unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=50)


# -----------------------------
# Unranking
# -----------------------------
@pytest.mark.parametrize(
    "j, r, d, expected",
    [
        (1, 2, 3, (1, 2)),
        (2, 2, 3, (1, 3)),
        (3, 2, 3, (2, 3)),
        (1, 4, 4, (1, 2, 3, 4)),
    ],
)
def test_combination_unrank(j, r, d, expected):
    assert combination_unrank(j, r, d) == expected
    assert combination_rank(expected, d) == j


@pytest.mark.parametrize("d, r", [(5, 2), (6, 3), (7, 1), (7, 7)])
def test_unrank_is_lexicographic_bijection(d, r):
    subsets = [combination_unrank(j, r, d) for j in range(1, comb(d, r) + 1)]
    assert len(set(subsets)) == comb(d, r)
    assert subsets == sorted(subsets)
    assert all(list(s) == sorted(s) for s in subsets)


@pytest.mark.parametrize("j, r, d", [(0, 2, 3), (4, 2, 3), (1, 4, 3), (1, 0, 3)])
def test_unrank_out_of_range(j, r, d):
    with pytest.raises(PreconditionError):
        combination_unrank(j, r, d)


def test_rank_rejects_unsorted_subset():
    with pytest.raises(PreconditionError):
        combination_rank((2, 1), 3)


# -----------------------------
# Subpool maxes
# -----------------------------
def test_subpool_max_worked_example():
    x = (3, 2, 10, 5)
    assert subpool_max(x, (1, 2, 4)) == 5
    assert subpool_max(x, (1, 2, 3, 4)) == 10


def test_subpool_max_empty_set():
    with pytest.raises(PreconditionError):
        subpool_max((1, 2), ())


def test_average_of_triples():
    x = (3, 2, 10, 5)
    assert avg_subpool_max_direct(x, 3) == F(35, 4)
    assert avg_subpool_max_orderstat(x, 3) == F(35, 4)


def test_extreme_orders():
    x = (F(1, 3), F(5, 7), F(-2))
    assert avg_subpool_max_orderstat(x, 1) == sum(x) / 3
    assert avg_subpool_max_orderstat(x, 3) == max(x)


def test_second_largest_order_closed_form():
    d = 5
    x = (F(1), F(0), F(0), F(0), F(0))
    assert avg_subpool_max_orderstat(x, d - 1) == F(d - 1, d)


def test_enumeration_cap():
    with pytest.raises(EnumerationLimitError) as excinfo:
        avg_subpool_max_direct(tuple(range(30)), 15)
    assert excinfo.value.count == comb(30, 15)


def test_weights_normalise():
    for d in range(1, 9):
        for r in range(1, d + 1):
            assert sum(order_statistic_weights(r, d)) == 1


@settings(max_examples=200, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=8), st.data())
def test_direct_matches_order_statistics(x, data):
    r = data.draw(st.integers(min_value=1, max_value=len(x)))
    assert avg_subpool_max_direct(x, r) == avg_subpool_max_orderstat(x, r)


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=2, max_size=8))
def test_averages_increase_with_order(x):
    values = [avg_subpool_max_orderstat(x, r) for r in range(1, len(x) + 1)]
    assert values == sorted(values)
    assert values[-1] == max(x)


# -----------------------------
# Matrices
# -----------------------------
def test_b_matrix_small_cases():
    assert b_matrix(2).to_rows() == ((F(1, 2), F(1, 2)),)
    assert b_matrix(3).to_rows() == ((F(1, 3), F(1, 3), F(1, 3)), (F(2, 3), F(1, 3), F(0)))


def test_v_matrix_pattern():
    assert v_matrix(2).to_rows() == ((0, 1, 1), (0, 0, 1))
    V = v_matrix(5)
    assert all(v == 0 for v in V.column(0))
    assert all(v == 1 for v in V.column(5))


def test_k_matrix_small_cases():
    assert k_matrix(2).to_rows() == ((0, F(1, 2), 1),)
    assert k_matrix(3).row(0) == (0, F(1, 3), F(2, 3), 1)
    assert all(v == 0 for v in k_matrix(6).column(0))


@settings(max_examples=100, deadline=None)
@given(st.lists(unit_rationals, min_size=2, max_size=7))
def test_k_matrix_maps_v_coordinates_to_averages(x):
    d = len(x)
    lam = v_coordinates(x)
    assert sum(lam) == 1
    expected = tuple(avg_subpool_max_orderstat(x, r) for r in range(1, d))
    assert k_matrix(d).matvec(lam) == expected


def test_v_coordinates_outside_cube():
    with pytest.raises(PreconditionError):
        v_coordinates((F(3, 2), F(0)))
