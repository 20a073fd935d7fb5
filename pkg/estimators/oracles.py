"""
Independent checks on the certified numbers.

``vertex_error``, ``sliver_classify`` and the closed-form max formulas are
exact. Grid and sampling oracles run in binary floating point with numpy and
are compared against exact values with explicit slack.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .exact import to_exact
from .exceptions import BudgetExceededError, PreconditionError
from .fitting import REstimator, error_profile
from .subpool import combination_rank, order_statistic_weights

logger = logging.getLogger(__name__)

GRID_BUDGET = 10 ** 8
CHUNK = 100_000


@dataclass(frozen=True)
class OracleConfig:
    grid_resolution: int = 101
    samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.grid_resolution < 2:
            raise PreconditionError("Grid resolution must be at least 2.")
        if self.samples < 1:
            raise PreconditionError("Sample count must be positive.")


@dataclass(frozen=True)
class SampleErrorReport:
    samples: int
    max_error: float
    eps: Optional[float]
    exceed_fraction: Optional[float]

    @property
    def exceed_stderr(self) -> Optional[float]:
        if self.exceed_fraction is None:
            return None
        p = self.exceed_fraction
        return float(np.sqrt(max(p * (1 - p), 0.0) / self.samples))


@dataclass(frozen=True)
class SliverClassification:
    k: Optional[int]
    subset: Optional[Tuple[int, ...]]
    top_indices: Tuple[int, ...]


def vertex_error(est: REstimator) -> Fraction:
    """Exact L-infinity error over [0, 1]^d of a symmetric estimator."""
    return max(abs(v) for v in error_profile(est))


def lipschitz_gap(est: REstimator, n: int) -> Fraction:
    """Bound on vertex_error - grid_error for an n-per-axis grid."""
    if n < 2:
        raise PreconditionError("Grid resolution must be at least 2.")
    constant = (1 + sum(abs(b) for _, b in est.betas)) / 2
    return constant / (n - 1)


def _combined_weights(est: REstimator) -> np.ndarray:
    weights = [Fraction(0)] * est.d
    for r, beta in est.betas:
        for j, w in enumerate(order_statistic_weights(r, est.d)):
            weights[j] += beta * w
    return np.array([float(w) for w in weights])


def _abs_errors(est: REstimator, X: np.ndarray, weights: np.ndarray) -> np.ndarray:
    ordered = np.sort(X, axis=1)[:, ::-1]
    values = float(est.intercept) + ordered @ weights
    return np.abs(values - ordered[:, 0])


def _chunks(total: int, size: int = CHUNK):
    for start in range(0, total, size):
        yield start, min(start + size, total)


def grid_error(est: REstimator, n: int, budget: int = GRID_BUDGET) -> float:
    """max |est(x) - max(x)| over the uniform n-per-axis grid on [0, 1]^d."""
    if n < 2:
        raise PreconditionError("Grid resolution must be at least 2.")
    total = n ** est.d
    if total > budget:
        raise BudgetExceededError(total, budget, "grid points")
    logger.debug("Grid error over %d points for d=%d.", total, est.d)
    weights = _combined_weights(est)
    shape = (n,) * est.d
    worst = 0.0
    for start, stop in _chunks(total):
        coords = np.stack(np.unravel_index(np.arange(start, stop), shape), axis=1) / (n - 1)
        worst = max(worst, float(_abs_errors(est, coords, weights).max()))
    return worst


def _sample_uniform(d: int, samples: int, seed: int):
    """Yield seeded uniform blocks; each block has its own spawned stream."""
    blocks = list(_chunks(samples))
    children = np.random.SeedSequence(seed).spawn(len(blocks))
    for (start, stop), child in zip(blocks, children):
        yield np.random.default_rng(child).random((stop - start, d))


def random_error(est: REstimator, samples: int, seed: int, eps=None) -> SampleErrorReport:
    if samples < 1:
        raise PreconditionError("Sample count must be positive.")
    weights = _combined_weights(est)
    threshold = float(to_exact(eps)) if eps is not None else None
    worst, exceed = 0.0, 0
    for X in _sample_uniform(est.d, samples, seed):
        errors = _abs_errors(est, X, weights)
        worst = max(worst, float(errors.max()))
        if threshold is not None:
            exceed += int(np.count_nonzero(errors >= threshold))
    return SampleErrorReport(
        samples=samples,
        max_error=worst,
        eps=threshold,
        exceed_fraction=exceed / samples if threshold is not None else None,
    )


def mean_squared_error(est: REstimator, samples: int, seed: int) -> Tuple[float, float]:
    """Monte Carlo mean of (est(x) - max(x))^2 over uniform x, with its standard error."""
    weights = _combined_weights(est)
    total, total_sq = 0.0, 0.0
    for X in _sample_uniform(est.d, samples, seed):
        sq = _abs_errors(est, X, weights) ** 2
        total += float(sq.sum())
        total_sq += float((sq ** 2).sum())
    mean = total / samples
    variance = max(total_sq / samples - mean ** 2, 0.0)
    return mean, float(np.sqrt(variance / samples))


@dataclass(frozen=True)
class SpacingMoments:
    covariance: np.ndarray
    stderr: np.ndarray


def uniform_spacings(d: int, samples: int, seed: int) -> np.ndarray:
    """Gaps of d sorted uniform points padded with 0 and 1; rows are Dirichlet(1, ..., 1)."""
    if samples < 1:
        raise PreconditionError("Sample count must be positive.")
    blocks = []
    for X in _sample_uniform(d, samples, seed):
        padded = np.hstack([np.zeros((len(X), 1)), np.sort(X, axis=1), np.ones((len(X), 1))])
        blocks.append(np.diff(padded, axis=1))
    return np.vstack(blocks)


def dirichlet_moments(d: int, samples: int, seed: int) -> SpacingMoments:
    """Empirical covariance of the d + 1 spacings with a standard error per entry."""
    spacings = uniform_spacings(d, samples, seed)
    centered = spacings - spacings.mean(axis=0)
    size = d + 1
    covariance = np.empty((size, size))
    stderr = np.empty((size, size))
    for i in range(size):
        for j in range(size):
            products = centered[:, i] * centered[:, j]
            covariance[i, j] = products.mean()
            stderr[i, j] = products.std() / np.sqrt(samples)
    return SpacingMoments(covariance=covariance, stderr=stderr)


def sliver_classify(x: Sequence, r: int) -> SliverClassification:
    """
    Locate x among the slivers of order r.

    x lies in the sliver of subset c when its r largest coordinates, read in
    decreasing value, have increasing indices. Ties are never classified.
    """
    d = len(x)
    if not 1 <= r <= d:
        raise PreconditionError(f"Sliver order must satisfy 1 <= r <= d, got r={r}, d={d}.")
    order = sorted(range(d), key=lambda i: x[i], reverse=True)
    top = tuple(i + 1 for i in order[:r])
    if len(set(x)) < d:
        return SliverClassification(k=None, subset=None, top_indices=top)
    if any(b <= a for a, b in zip(top, top[1:])):
        return SliverClassification(k=None, subset=None, top_indices=top)
    return SliverClassification(k=combination_rank(top, d), subset=top, top_indices=top)


def sliver_coverage(d: int, r: int, samples: int, seed: int) -> float:
    """Fraction of uniform points that fall in some order-r sliver; tends to 1/r!."""
    if not 1 <= r < d:
        raise PreconditionError(f"Sliver coverage needs 1 <= r < d, got r={r}, d={d}.")
    if samples < 1:
        raise PreconditionError("Sample count must be positive.")
    covered = 0
    for X in _sample_uniform(d, samples, seed):
        top = np.argsort(-X, axis=1)[:, :r]
        covered += int(np.count_nonzero(np.all(np.diff(top, axis=1) > 0, axis=1)))
    return covered / samples


def relu(value):
    return value if value > 0 else value * 0


def _exact_ints(*values):
    return tuple(Fraction(v) if isinstance(v, int) else v for v in values)


def max2_closed(a, b):
    """(ReLU(a - b) + ReLU(b - a) + a + b) / 2."""
    a, b = _exact_ints(a, b)
    return (relu(a - b) + relu(b - a) + a + b) / 2


def max3_closed(x1, x2, x3):
    """Three-way max written with absolute differences only."""
    x1, x2, x3 = _exact_ints(x1, x2, x3)
    d12, d13, d23 = abs(x1 - x2), abs(x1 - x3), abs(x2 - x3)
    spread = d12 + d23 + d13
    if spread == 0:
        return x1
    weighted = x1 * (d12 + d13) + x2 * (d12 + d23) + x3 * (d23 + d13)
    return weighted / spread / 2 + spread / 4


def three_sigma(p: float, samples: int) -> float:
    return 3 * float(np.sqrt(max(p * (1 - p), 0.0) / samples))
