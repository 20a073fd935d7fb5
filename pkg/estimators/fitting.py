"""
Optimal R-estimators.

An R-estimator approximates max(x) by beta_0 + sum_r beta_r S(x; r, d) over
r in R. The error of a symmetric estimator is affine on every sorted simplex
of the unit cube, so its worst case is attained at the d+1 nested binary
points (0,...,0), (1,0,...,0), ..., (1,...,1), and fitting over those points
is the whole minimax problem.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from .exact import ExactMatrix, ExactVector, to_exact
from .exceptions import AnalysisError, CoefficientCheckError, PreconditionError
from .lp import MinimaxFit, lp_minimax
from .subpool import avg_subpool_max_orderstat, k_matrix

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


def normalize_subset(d: int, R: Iterable[int]) -> Tuple[int, ...]:
    if d < 2:
        raise PreconditionError(f"Estimators need d >= 2, got d={d}.")
    R = tuple(sorted(set(int(r) for r in R)))
    if not R:
        raise PreconditionError("R must be nonempty.")
    bad = [r for r in R if not 0 <= r <= d - 1]
    if bad:
        raise PreconditionError(f"R must be a subset of 0..{d - 1}; got out-of-range {bad}.")
    return R


@dataclass(frozen=True)
class REstimator:
    d: int
    R: Tuple[int, ...]
    beta0: Optional[Fraction]
    betas: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        R = normalize_subset(self.d, self.R)
        object.__setattr__(self, "R", R)
        if (0 in R) != (self.beta0 is not None):
            raise PreconditionError("beta0 must be given exactly when 0 is in R.")
        orders = tuple(r for r, _ in self.betas)
        if orders != tuple(r for r in R if r != 0):
            raise PreconditionError(f"Coefficient orders {orders} do not match R={R}.")

    @classmethod
    def from_coefficients(cls, d: int, R: Iterable[int], coeffs: Sequence) -> "REstimator":
        """Build from the flat vector (beta0 if 0 in R, then beta_r for increasing r)."""
        R = normalize_subset(d, R)
        coeffs = [to_exact(c) for c in coeffs]
        if len(coeffs) != len(R):
            raise PreconditionError(f"Expected {len(R)} coefficients for R={R}, got {len(coeffs)}.")
        beta0 = coeffs.pop(0) if 0 in R else None
        orders = [r for r in R if r != 0]
        return cls(d=d, R=R, beta0=beta0, betas=tuple(zip(orders, coeffs)))

    @property
    def intercept(self) -> Fraction:
        return self.beta0 if self.beta0 is not None else ZERO

    def beta(self, r: int) -> Fraction:
        return dict(self.betas).get(r, ZERO)

    def coefficients(self) -> ExactVector:
        head = (self.beta0,) if self.beta0 is not None else ()
        return head + tuple(b for _, b in self.betas)


@dataclass(frozen=True)
class SolveReport:
    estimator: REstimator
    err: Fraction
    profile: ExactVector
    certificate: MinimaxFit = field(repr=False)


@dataclass(frozen=True)
class ClosedForm:
    value: Fraction
    kind: str  # "exact" or "upper_bound"


@dataclass(frozen=True)
class TableRow:
    d: int
    R: Tuple[int, ...]
    err: Fraction


def nested_points(d: int) -> List[ExactVector]:
    """The points P in V-column order: k leading ones for k = 0..d."""
    return [tuple(Fraction(int(i < k)) for i in range(d)) for k in range(d + 1)]


def _feature_matrix(d: int, R: Tuple[int, ...], points) -> ExactMatrix:
    rows = []
    for p in points:
        row = [Fraction(1)] if 0 in R else []
        row.extend(avg_subpool_max_orderstat(p, r) for r in R if r != 0)
        rows.append(row)
    return ExactMatrix.from_rows(rows, cols=len(R))


def chebyshev_center(gamma: Sequence) -> Tuple[Fraction, Fraction]:
    """The constant a minimising max |gamma_i - a|, and that minimum."""
    gamma = [to_exact(g) for g in gamma]
    if not gamma:
        raise PreconditionError("Chebyshev center of an empty set is undefined.")
    hi, lo = max(gamma), min(gamma)
    return (hi + lo) / 2, (hi - lo) / 2


def _uncentered_profile(est: REstimator) -> ExactVector:
    K = k_matrix(est.d)
    target = (ZERO,) + (Fraction(1),) * est.d
    return tuple(
        target[c] - sum((b * K[r - 1, c] for r, b in est.betas), ZERO)
        for c in range(est.d + 1)
    )


def loading_vector(est: REstimator) -> ExactVector:
    """beta^T K_R(d): estimator value minus intercept at each cone vertex."""
    K = k_matrix(est.d)
    return tuple(
        sum((b * K[r - 1, c] for r, b in est.betas), ZERO) for c in range(est.d + 1)
    )


def error_profile(est: REstimator) -> ExactVector:
    """x_(1) - est(x) at the d+1 cone vertices, in V-column order."""
    return tuple(v - est.intercept for v in _uncentered_profile(est))


def evaluate_estimator(est: REstimator, x: Sequence):
    if len(x) != est.d:
        raise PreconditionError(f"Input has length {len(x)}, estimator expects {est.d}.")
    return est.intercept + sum(b * avg_subpool_max_orderstat(x, r) for r, b in est.betas)


@lru_cache(maxsize=256)
def _fit(d: int, R: Tuple[int, ...]) -> SolveReport:
    points = nested_points(d)
    targets = [max(p) for p in points]
    fit = lp_minimax(points, targets, _feature_matrix(d, R, points))
    estimator = REstimator.from_coefficients(d, R, fit.coeffs)

    if 0 in R:
        center, value = chebyshev_center(_uncentered_profile(estimator))
        if value != fit.g or center != estimator.beta0:
            raise AnalysisError(
                f"Chebyshev re-centering ({center}, {value}) disagrees with the LP "
                f"({estimator.beta0}, {fit.g}) for d={d}, R={R}."
            )

    profile = error_profile(estimator)
    if max(abs(v) for v in profile) != fit.g:
        raise AnalysisError(f"Vertex profile does not reproduce the LP value for d={d}, R={R}.")
    logger.debug("Fitted d=%d R=%s: err=%s after %d pivots.", d, R, fit.g, fit.solution.iterations)
    return SolveReport(estimator=estimator, err=fit.g, profile=profile, certificate=fit)


def fit_optimal(d: int, R: Iterable[int]) -> SolveReport:
    """Exact minimax R-estimator for the max over [0, 1]^d."""
    return _fit(d, normalize_subset(d, R))


def closed_form_error(d: int, R: Iterable[int]) -> Optional[ClosedForm]:
    R = normalize_subset(d, R)
    if R == (d - 1,):
        return ClosedForm(Fraction(1, 2 * d - 1), "exact")
    if R == (0, d - 1):
        return ClosedForm(Fraction(1, 2 * d), "exact")
    if R == tuple(range(d)):
        return ClosedForm(Fraction(1, 2 ** d), "upper_bound")
    return None


def full_coefficients(d: int) -> REstimator:
    """
    The {0, 1, ..., d-1}-estimator with beta_0 = 1/2^d and
    beta_r = -(-1/2)^(d-r) C(d, r), checked to reach error exactly 1/2^d.
    """
    if d < 2:
        raise PreconditionError(f"Full estimators need d >= 2, got d={d}.")
    half = Fraction(-1, 2)
    est = REstimator(
        d=d,
        R=tuple(range(d)),
        beta0=Fraction(1, 2 ** d),
        betas=tuple((r, -(half ** (d - r)) * comb(d, r)) for r in range(1, d)),
    )
    profile = error_profile(est)
    expected = Fraction(1, 2 ** d)
    if max(abs(v) for v in profile) != expected:
        raise CoefficientCheckError(profile, expected)
    return est


def measure_lower_bound(d: int, R: Iterable[int], eps) -> Fraction:
    """(err(R)/2 - eps)^d, a lower bound on the volume where the error is >= eps."""
    R = normalize_subset(d, R)
    if 0 not in R:
        raise PreconditionError("The measure bound applies only when 0 is in R.")
    eps = to_exact(eps)
    err = fit_optimal(d, R).err
    if eps < 0 or eps >= err / 2:
        raise PreconditionError(f"eps must satisfy 0 <= eps < err(R)/2 = {err / 2}, got {eps}.")
    return (err / 2 - eps) ** d


def intercept_measure_bound(d: int, R: Iterable[int], eps) -> Optional[Fraction]:
    """(beta0* - eps)^d from the cube [0, beta0* - eps]^d near the origin; None if empty."""
    R = normalize_subset(d, R)
    if 0 not in R:
        raise PreconditionError("The measure bound applies only when 0 is in R.")
    eps = to_exact(eps)
    if eps < 0:
        raise PreconditionError(f"eps must be non-negative, got {eps}.")
    beta0 = fit_optimal(d, R).estimator.beta0
    if eps >= beta0:
        return None
    return (beta0 - eps) ** d


def all_subsets(d: int) -> List[Tuple[int, ...]]:
    orders = range(d)
    return [R for size in range(1, d + 1) for R in combinations(orders, size)]


def error_table(d_max: int, d_min: int = 2) -> List[TableRow]:
    rows = []
    for d in range(d_min, d_max + 1):
        for R in all_subsets(d):
            rows.append(TableRow(d=d, R=R, err=fit_optimal(d, R).err))
    return rows
