from fractions import Fraction

import numpy as np
import pytest

from estimators.exceptions import PreconditionError
from estimators.l2 import dirichlet_covariance, l2_optimal, l2_target, residual_orthogonality
from estimators.oracles import dirichlet_moments, mean_squared_error, uniform_spacings

F = Fraction


# -----------------------------
# Dirichlet covariance
# -----------------------------
def test_covariance_of_uniform_interval():
    assert dirichlet_covariance(1).to_rows() == ((F(1, 12), F(-1, 12)), (F(-1, 12), F(1, 12)))


@pytest.mark.parametrize("d", range(1, 8))
def test_covariance_rows_sum_to_zero(d):
    Sigma = dirichlet_covariance(d)
    assert Sigma.is_symmetric()
    assert all(sum(Sigma.row(i)) == 0 for i in range(d + 1))


def _exact_covariance(d):
    return np.array([[float(v) for v in row] for row in dirichlet_covariance(d).to_rows()])


def test_spacings_lie_on_the_simplex():
    spacings = uniform_spacings(3, 10_000, seed=2)
    assert spacings.shape == (10_000, 4)
    assert np.all(spacings >= 0)
    assert np.allclose(spacings.sum(axis=1), 1.0)
    assert np.allclose(spacings.mean(axis=0), 1 / 4, atol=0.02)


def test_covariance_matches_sampled_moments():
    exact = _exact_covariance(2)
    sampled = dirichlet_moments(2, 200_000, seed=7)
    assert exact[0, 0] == pytest.approx(1 / 18)
    assert np.all(np.abs(sampled.covariance - exact) <= 5 * sampled.stderr)


def test_sampled_moment_errors_shrink_with_samples():
    small = dirichlet_moments(2, 10_000, seed=1).stderr
    large = dirichlet_moments(2, 1_000_000, seed=1).stderr
    assert np.all(large < small / 5)


@pytest.mark.slow
def test_covariance_within_three_sigma_at_a_million_samples():
    exact = _exact_covariance(2)
    sampled = dirichlet_moments(2, 1_000_000, seed=11)
    assert np.all(np.abs(sampled.covariance - exact) <= 3 * sampled.stderr)


def test_covariance_needs_positive_dimension():
    with pytest.raises(PreconditionError):
        dirichlet_covariance(0)


# -----------------------------
# Least-squares optimum
# -----------------------------
def test_two_dimensional_optimum():
    report = l2_optimal(2)
    assert report.alpha_star == (1,)
    assert report.alpha0_star == F(1, 6)
    assert report.normalized_sq_error == F(1, 72)


def test_target_vector():
    assert l2_target(3) == (0, 1, 1, 1)


@pytest.mark.parametrize("d", range(2, 9))
def test_error_is_strictly_positive(d):
    assert l2_optimal(d).normalized_sq_error > 0


@pytest.mark.parametrize("d", range(2, 7))
def test_residual_is_orthogonal(d):
    assert all(v == 0 for v in residual_orthogonality(l2_optimal(d)))


def test_estimator_uses_every_order():
    est = l2_optimal(4).estimator()
    assert est.R == (0, 1, 2, 3)
    assert est.beta0 == l2_optimal(4).alpha0_star


def test_l2_needs_two_dimensions():
    with pytest.raises(PreconditionError):
        l2_optimal(1)


@pytest.mark.slow
@pytest.mark.parametrize("d", [2, 3])
def test_monte_carlo_agrees_with_exact_error(d):
    report = l2_optimal(d)
    mean, stderr = mean_squared_error(report.estimator(), 10 ** 6, seed=0)
    assert abs(mean - float(report.normalized_sq_error)) <= 3 * stderr
