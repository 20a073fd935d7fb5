"""
Least-squares (L2) analysis of full R-estimators.

Sorting a uniform point of [0, 1]^d and taking its V-coordinates gives a
Dirichlet(1, ..., 1) vector on the d-simplex, so the mean squared error of an
estimator is a quadratic form in the Dirichlet covariance.
"""
from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactMatrix, ExactVector
from .exceptions import PreconditionError
from .fitting import REstimator
from .linalg import psd_project_residual
from .subpool import k_matrix


@dataclass(frozen=True)
class L2Report:
    d: int
    Sigma: ExactMatrix
    Xi: ExactMatrix
    alpha_star: ExactVector
    alpha0_star: Fraction
    normalized_sq_error: Fraction

    def estimator(self) -> REstimator:
        return REstimator.from_coefficients(self.d, range(self.d), (self.alpha0_star,) + self.alpha_star)


def dirichlet_covariance(d: int) -> ExactMatrix:
    """Covariance of Dirichlet(1, ..., 1) with d+1 components."""
    if d < 1:
        raise PreconditionError(f"Dirichlet covariance needs d >= 1, got {d}.")
    scale = Fraction(1, (d + 1) ** 2 * (d + 2))
    return ExactMatrix.from_rows(
        [[scale * (d if i == j else -1) for j in range(d + 1)] for i in range(d + 1)],
        cols=d + 1,
    )


def l2_target(d: int) -> ExactVector:
    """x_(1) in V-coordinates: zero at the origin vertex, one elsewhere."""
    return (Fraction(0),) + (Fraction(1),) * d


def l2_optimal(d: int) -> L2Report:
    if d < 2:
        raise PreconditionError(f"L2 analysis needs d >= 2, got {d}.")
    Sigma = dirichlet_covariance(d)
    Xi = k_matrix(d).transpose()
    A = l2_target(d)
    alpha, residual_quadratic = psd_project_residual(A, Xi, Sigma)
    fitted = Xi.matvec(alpha)
    mean_weight = Fraction(1, d + 1)
    alpha0 = sum((a - f for a, f in zip(A, fitted)), Fraction(0)) * mean_weight
    return L2Report(
        d=d,
        Sigma=Sigma,
        Xi=Xi,
        alpha_star=alpha,
        alpha0_star=alpha0,
        normalized_sq_error=residual_quadratic,
    )


def residual_orthogonality(report: L2Report) -> ExactVector:
    """Xi^T Sigma (A - Xi alpha*); identically zero at the optimum."""
    A = l2_target(report.d)
    fitted = report.Xi.matvec(report.alpha_star)
    residual = tuple(a - f for a, f in zip(A, fitted))
    return (report.Xi.transpose() @ report.Sigma).matvec(residual)
