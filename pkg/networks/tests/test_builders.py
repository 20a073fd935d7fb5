from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from estimators.exceptions import PreconditionError
from estimators.fitting import evaluate_estimator, fit_optimal, nested_points
from networks.builders import (
    d1_estimator,
    d1_estimator_network,
    full_estimator_widths,
    heaviside_gate,
    pairwise_max_network,
)
from networks.relu import forward
from networks.schedule import width_schedule

F = Fraction

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=100)


def vectors(min_size, max_size):
    return st.lists(rationals, min_size=min_size, max_size=max_size)


# -----------------------------
# Pairwise max
# -----------------------------
@pytest.mark.parametrize("d, stages", [(2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (64, 6)])
def test_pairwise_stage_count(d, stages):
    assert pairwise_max_network(d).relu_stages == stages


def test_pairwise_widths_after_padding():
    net = pairwise_max_network(5)
    assert net.value_widths == (4, 2, 1)
    assert net.relu_widths == (16, 8, 4)


def test_pairwise_annotations_track_indices():
    net = pairwise_max_network(3)
    assert net.layers[0].annotations[0] == (1, 2)
    assert net.layers[-1].annotations == ((1, 2, 3),)


@settings(max_examples=200, deadline=None)
@given(vectors(2, 17))
def test_pairwise_is_exact(x):
    assert forward(pairwise_max_network(len(x)), x) == (max(x),)


def test_pairwise_needs_two_inputs():
    with pytest.raises(PreconditionError):
        pairwise_max_network(1)


# -----------------------------
# Heaviside gate
# -----------------------------
def test_heaviside_examples():
    gate = heaviside_gate(3, F(1, 2))
    assert forward(gate, (0, F(1, 4), F(1, 2))) == (0,)
    assert forward(gate, (1, 0, 0)) == (F(1, 2),)


@settings(max_examples=300, deadline=None)
@given(vectors(1, 8), st.data())
def test_heaviside_biconditional(x, data):
    xi = data.draw(st.one_of(st.sampled_from(x), rationals))
    (out,) = forward(heaviside_gate(len(x), xi), x)
    assert out >= 0
    assert (out == 0) == (max(x) <= xi)


# -----------------------------
# Order-(d-1) estimator network
# -----------------------------
def test_d1_estimator_is_optimal():
    est = d1_estimator(5)
    report = fit_optimal(5, (0, 4))
    assert est.beta0 == report.estimator.beta0 == F(1, 10)
    assert est.beta(4) == report.estimator.beta(4) == 1


def test_d1_network_worked_value():
    assert forward(d1_estimator_network(3), (1, 0, 0)) == (F(5, 6),)


@pytest.mark.parametrize("d", [3, 4, 5, 9, 10])
def test_d1_network_widths(d):
    assert d1_estimator_network(d).value_widths == width_schedule(d).widths


@pytest.mark.parametrize("d", range(3, 8))
def test_d1_network_vertex_error(d):
    net = d1_estimator_network(d)
    worst = max(abs(forward(net, p)[0] - max(p)) for p in nested_points(d))
    assert worst == F(1, 2 * d)


@settings(max_examples=60, deadline=None)
@given(vectors(3, 9))
def test_d1_network_matches_estimator(x):
    d = len(x)
    assert forward(d1_estimator_network(d), x) == (evaluate_estimator(d1_estimator(d), x),)


def test_d1_network_needs_three_inputs():
    with pytest.raises(PreconditionError):
        d1_estimator_network(2)


# -----------------------------
# Full estimator
# -----------------------------
def test_full_estimator_widths():
    assert full_estimator_widths(9) == (36, 84, 126, 126, 84, 36)
    assert full_estimator_widths(3) == (3,)
    with pytest.raises(PreconditionError):
        full_estimator_widths(2)
