"""
Named verification suites.

Each suite returns a list of ``Check`` records (name, expected, got, status).
Exact quantities are compared with ``==`` on Fractions; sampled quantities are
compared with their stated slack.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional

import numpy as np
from django.conf import settings

from networks.builders import (
    d1_estimator,
    d1_estimator_network,
    full_estimator_widths,
    heaviside_gate,
    pairwise_max_network,
)
from networks.relu import forward
from networks.schedule import tuple_schedule, width_schedule

from .exact import format_rational
from .exceptions import PreconditionError
from .fitting import all_subsets, evaluate_estimator, fit_optimal, full_coefficients, nested_points
from .l2 import l2_optimal, residual_orthogonality
from .oracles import OracleConfig, grid_error, lipschitz_gap, max2_closed, max3_closed, mean_squared_error, random_error, vertex_error
from .subpool import avg_subpool_max_direct, avg_subpool_max_orderstat, combination_rank, combination_unrank
from .services import measure_report

logger = logging.getLogger(__name__)

FLOAT_SLACK = 1e-12

# (d, R) -> err for every row of the published all-subsets table.
PUBLISHED_TABLE = {
    (2, (1,)): Fraction(1, 3),
    (2, (0, 1)): Fraction(1, 4),
    (3, (1,)): Fraction(1, 2),
    (3, (2,)): Fraction(1, 5),
    (3, (0, 1)): Fraction(1, 3),
    (3, (0, 2)): Fraction(1, 6),
    (3, (1, 2)): Fraction(1, 7),
    (3, (0, 1, 2)): Fraction(1, 8),
    (4, (1,)): Fraction(3, 5),
    (4, (2,)): Fraction(1, 3),
    (4, (3,)): Fraction(1, 7),
    (4, (0, 1)): Fraction(3, 8),
    (4, (0, 2)): Fraction(1, 4),
    (4, (0, 3)): Fraction(1, 8),
    (4, (1, 2)): Fraction(1, 5),
    (4, (1, 3)): Fraction(1, 9),
    (4, (2, 3)): Fraction(1, 13),
    (4, (0, 1, 2)): Fraction(1, 6),
    (4, (0, 1, 3)): Fraction(1, 10),
    (4, (0, 2, 3)): Fraction(1, 14),
    (4, (1, 2, 3)): Fraction(1, 15),
    (4, (0, 1, 2, 3)): Fraction(1, 16),
}


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    got: str
    passed: bool

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def as_dict(self):
        return {"name": self.name, "expected": self.expected, "got": self.got, "status": self.status}


@dataclass(frozen=True)
class VerifyConfig:
    d_max: Optional[int] = None
    samples: Optional[int] = None
    seed: int = 0

    def d_limit(self, default):
        return default if self.d_max is None else self.d_max

    def sample_count(self, default):
        return default if self.samples is None else self.samples


def _check(name, expected, got, passed=None):
    if passed is None:
        passed = expected == got
    return Check(name=name, expected=_text(expected), got=_text(got), passed=bool(passed))


def _text(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _random_rationals(rng, count, size=1000):
    numerators = rng.integers(-size, size + 1, count)
    denominators = rng.integers(1, 100, count)
    return [Fraction(int(n), int(q)) for n, q in zip(numerators, denominators)]


def _exactness_tally(name, trials, predicate):
    hits = sum(1 for args in trials if predicate(*args))
    return _check(name, f"{len(trials)}/{len(trials)}", f"{hits}/{len(trials)}")


# -----------------------------
# Suites
# -----------------------------
def table_suite(config: VerifyConfig) -> List[Check]:
    checks = [
        _check(f"table d={d} R={set(R)}", err, fit_optimal(d, R).err)
        for (d, R), err in PUBLISHED_TABLE.items()
    ]
    for d in range(2, config.d_limit(6) + 1):
        checks.append(_check(f"intercept-only d={d}", Fraction(1, 2), fit_optimal(d, (0,)).err))
    return checks


def closed_form_suite(config: VerifyConfig) -> List[Check]:
    checks = []
    for d in range(2, config.d_limit(16) + 1):
        checks.append(_check(f"err({{{d - 1}}}) d={d}", Fraction(1, 2 * d - 1), fit_optimal(d, (d - 1,)).err))
        checks.append(_check(f"err({{0,{d - 1}}}) d={d}", Fraction(1, 2 * d), fit_optimal(d, (0, d - 1)).err))
    return checks


def full_suite(config: VerifyConfig) -> List[Check]:
    checks = []
    for d in range(2, config.d_limit(12) + 1):
        bound = Fraction(1, 2 ** d)
        checks.append(_check(f"full coefficients d={d}", bound, vertex_error(full_coefficients(d))))
        optimum = fit_optimal(d, range(d)).err
        checks.append(_check(f"full optimum d={d}", bound, optimum))
    return checks


def worked_example_suite(config: VerifyConfig) -> List[Check]:
    d1 = fit_optimal(9, (0, 8)).err
    full = fit_optimal(9, range(9)).err
    return [
        _check("err({0,8}) d=9", Fraction(1, 18), d1),
        _check("err({0,8}) d=9 printed", "0.0556", f"{float(d1):.4f}"),
        _check("err({0..8}) d=9", Fraction(1, 512), full),
        _check("err({0..8}) d=9 printed", "0.0020", f"{float(full):.4f}"),
        _check("hidden widths d=9", (12, 10), width_schedule(9).widths[:2]),
        _check("full estimator widths d=9", (36, 84, 126, 126, 84, 36), full_estimator_widths(9)),
    ]


def schedule_suite(config: VerifyConfig) -> List[Check]:
    schedule = tuple_schedule(10)
    checks = [
        _check("depth d=10", 4, schedule.depth),
        _check("layer sizes d=10", (17, 16, 12, 10), tuple(schedule.width(j) for j in range(1, 5))),
        _check("repeated tuples d=10", (9, 6, 2), tuple(schedule.repeated_count(j) for j in range(1, 4))),
    ]
    for d in range(3, config.d_limit(40) + 1):
        widths = width_schedule(d).widths
        built = tuple_schedule(d)
        checks.append(_check(
            f"schedule sizes d={d}", widths, tuple(built.width(j) for j in range(1, built.depth + 1))
        ))
        checks.append(_check(f"first layer bound d={d}", f"<= {2 * d - 3}", widths[0], widths[0] <= 2 * d - 3))
    return checks


def networks_suite(config: VerifyConfig) -> List[Check]:
    rng = np.random.default_rng(config.seed)
    samples = config.sample_count(1000)
    checks = []
    for d in range(2, config.d_limit(64) + 1):
        net = pairwise_max_network(d)
        stages = (d - 1).bit_length()
        checks.append(_check(f"pairwise stages d={d}", stages, net.relu_stages))
        trials = [(_random_rationals(rng, d),) for _ in range(samples)]
        checks.append(_exactness_tally(f"pairwise exact d={d}", trials, lambda x: forward(net, x) == (max(x),)))

    for d in range(3, min(config.d_limit(12), 12) + 1):
        net = d1_estimator_network(d)
        est = d1_estimator(d)
        trials = [(_random_rationals(rng, d),) for _ in range(max(samples // 10, 1))]
        checks.append(_exactness_tally(
            f"d1 network exact d={d}", trials, lambda x: forward(net, x) == (evaluate_estimator(est, x),)
        ))
        worst = max(abs(forward(net, p)[0] - max(p)) for p in nested_points(d))
        checks.append(_check(f"d1 network vertex error d={d}", Fraction(1, 2 * d), worst))
        checks.append(_check(f"d1 network widths d={d}", width_schedule(d).widths, net.value_widths))

    trials = []
    for _ in range(config.sample_count(10_000)):
        d = int(rng.integers(1, 9))
        x = _random_rationals(rng, d, size=20)
        xi = x[int(rng.integers(0, d))] if rng.random() < 0.25 else _random_rationals(rng, 1, size=20)[0]
        trials.append((x, xi))
    checks.append(_exactness_tally(
        "heaviside biconditional",
        trials,
        lambda x, xi: (forward(heaviside_gate(len(x), xi), x)[0] <= 0) == (max(x) <= xi),
    ))
    return checks


def l2_suite(config: VerifyConfig) -> List[Check]:
    checks = []
    for d in range(2, config.d_limit(8) + 1):
        report = l2_optimal(d)
        checks.append(_check(f"l2 positive d={d}", "> 0", report.normalized_sq_error, report.normalized_sq_error > 0))
        checks.append(_check(f"l2 orthogonal d={d}", True, all(v == 0 for v in residual_orthogonality(report))))
    checks.append(_check("l2 d=2", Fraction(1, 72), l2_optimal(2).normalized_sq_error))
    samples = config.sample_count(10 ** 6)
    for d in (2, 3):
        report = l2_optimal(d)
        mean, stderr = mean_squared_error(report.estimator(), samples, config.seed)
        exact = float(report.normalized_sq_error)
        checks.append(_check(
            f"l2 monte carlo d={d}", f"{exact:.6g} +/- 3 sigma", f"{mean:.6g} (sigma {stderr:.2g})",
            abs(mean - exact) <= 3 * stderr,
        ))
    return checks


def oracles_suite(config: VerifyConfig) -> List[Check]:
    checks = []
    samples = config.sample_count(10_000)
    for d, n in ((2, 101), (3, 51)):
        oracle = OracleConfig(grid_resolution=n, samples=samples, seed=config.seed)
        for R in all_subsets(d):
            fit = fit_optimal(d, R)
            est, exact = fit.estimator, fit.err
            gap = lipschitz_gap(est, oracle.grid_resolution)
            grid = grid_error(est, oracle.grid_resolution, budget=settings.MAXPOOL_ANALYSIS["GRID_BUDGET"])
            checks.append(_check(
                f"grid error d={d} R={set(R)}", f"in [{float(exact - gap):.6g}, {float(exact):.6g}]", f"{grid:.6g}",
                float(exact - gap) - FLOAT_SLACK <= grid <= float(exact) + FLOAT_SLACK,
            ))
            sampled = random_error(est, oracle.samples, oracle.seed)
            checks.append(_check(
                f"random error d={d} R={set(R)}", f"<= {float(exact):.6g}", f"{sampled.max_error:.6g}",
                sampled.max_error <= float(exact) + FLOAT_SLACK,
            ))
    return checks


def measure_suite(config: VerifyConfig) -> List[Check]:
    checks = []
    samples = config.sample_count(10 ** 5)
    for d, R in ((2, (0, 1)), (3, (0, 2)), (4, (0, 3))):
        report = measure_report(d, R, samples=samples, seed=config.seed)
        checks.append(_check(
            f"measure bound d={d} R={set(R)}",
            f">= {report['lemma_bound']['decimal']:.6g} - 3 sigma",
            f"{report['empirical_fraction']:.6g}",
            report["consistent"],
        ))
    return checks


def formulas_suite(config: VerifyConfig) -> List[Check]:
    rng = np.random.default_rng(config.seed)
    samples = config.sample_count(10_000)
    pairs, triples = [], []
    for i in range(samples):
        a, b, c = _random_rationals(rng, 3)
        if i % 4 == 0:
            b = a
        if i % 8 == 0:
            c = a
        pairs.append((a, b))
        triples.append((a, b, c))
    return [
        _exactness_tally("max2 closed form", pairs, lambda a, b: max2_closed(a, b) == max(a, b)),
        _exactness_tally("max3 closed form", triples, lambda a, b, c: max3_closed(a, b, c) == max(a, b, c)),
    ]


def subpool_suite(config: VerifyConfig) -> List[Check]:
    rng = np.random.default_rng(config.seed)
    limit = settings.MAXPOOL_ANALYSIS["ENUMERATION_LIMIT"]
    checks = []
    for d in range(1, config.d_limit(8) + 1):
        trials = [(_random_rationals(rng, d), r) for _ in range(20) for r in range(1, d + 1)]
        checks.append(_exactness_tally(
            f"direct equals order statistics d={d}",
            trials,
            lambda x, r: avg_subpool_max_direct(x, r, limit=limit) == avg_subpool_max_orderstat(x, r),
        ))
        ranks = [(j, r) for r in range(1, d + 1) for j in range(1, comb(d, r) + 1)]
        checks.append(_exactness_tally(
            f"rank inverts unrank d={d}", ranks, lambda j, r: combination_rank(combination_unrank(j, r, d), d) == j
        ))
    return checks


SUITES: Dict[str, Callable[[VerifyConfig], List[Check]]] = {
    "table": table_suite,
    "closed-form": closed_form_suite,
    "full": full_suite,
    "worked-example": worked_example_suite,
    "schedule": schedule_suite,
    "networks": networks_suite,
    "l2": l2_suite,
    "oracles": oracles_suite,
    "measure": measure_suite,
    "formulas": formulas_suite,
    "subpool": subpool_suite,
}


def run_suite(name: str, config: VerifyConfig = VerifyConfig()) -> List[Check]:
    if name == "all":
        checks = []
        for suite in SUITES.values():
            checks.extend(suite(config))
        return checks
    if name not in SUITES:
        raise PreconditionError(f"Unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}.")
    checks = SUITES[name](config)
    failed = sum(1 for c in checks if not c.passed)
    logger.info("Suite %s: %d checks, %d failed.", name, len(checks), failed)
    return checks
