"""
Report builders shared by the management commands and the API views.

Every builder returns plain JSON-ready data; exact values are {"exact": "p/q", "decimal": float} pairs.
"""
import csv
import io
import logging
from fractions import Fraction

from django.conf import settings
from django.core.cache import cache

from .exact import decimal_value, format_rational, to_exact
from .fitting import (
    error_profile,
    error_table,
    fit_optimal,
    full_coefficients,
    intercept_measure_bound,
    measure_lower_bound,
    normalize_subset,
)
from .l2 import l2_optimal, residual_orthogonality
from .models import RunManifest
from .oracles import mean_squared_error, random_error, three_sigma
from .serializers import (
    EstimatorSerializer,
    L2ReportSerializer,
    SolveReportSerializer,
    TableRowSerializer,
    exact_pair,
)

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["d", "R", "err_exact", "err_decimal"]


def jsonable(value):
    """Fractions become "p/q", tuples become lists, recursively."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


# -----------------------------
# Fits
# -----------------------------
def fit_cache_key(d, R):
    return f"fit:{d}:{','.join(str(r) for r in R)}"


def fit_report(d, R):
    R = normalize_subset(d, R)

    def fetch():
        return dict(SolveReportSerializer(fit_optimal(d, R)).data)

    return cache.get_or_set(
        fit_cache_key(d, R), fetch, timeout=settings.MAXPOOL_ANALYSIS["FIT_CACHE_TIMEOUT"]
    )


def table_report(d_max):
    return [dict(row) for row in TableRowSerializer(error_table(d_max), many=True).data]


def table_csv(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in rows:
        writer.writerow([
            row["d"],
            ",".join(str(r) for r in row["R"]),
            row["err"]["exact"],
            row["err"]["decimal"],
        ])
    return buffer.getvalue()


def full_report(d):
    estimator = full_coefficients(d)
    achieved = max(abs(v) for v in error_profile(estimator))
    optimum = fit_optimal(d, range(d)).err
    return {
        "d": d,
        "estimator": dict(EstimatorSerializer(estimator).data),
        "achieved_err": exact_pair(achieved),
        "bound": exact_pair(Fraction(1, 2 ** d)),
        "optimal_err": exact_pair(optimum),
        "bound_attained": optimum == Fraction(1, 2 ** d),
    }


# -----------------------------
# L2 and measure
# -----------------------------
def l2_report(d, samples=None, seed=None):
    report = l2_optimal(d)
    data = dict(L2ReportSerializer(report).data)
    data["residual_orthogonal"] = all(v == 0 for v in residual_orthogonality(report))
    if samples:
        seed = settings.MAXPOOL_ANALYSIS["DEFAULT_SEED"] if seed is None else seed
        mean, stderr = mean_squared_error(report.estimator(), samples, seed)
        exact = decimal_value(report.normalized_sq_error)
        data["monte_carlo"] = {
            "samples": samples,
            "seed": seed,
            "mean_sq_error": mean,
            "stderr": stderr,
            "within_3_sigma": abs(mean - exact) <= 3 * stderr,
        }
    return data


def measure_report(d, R, eps=None, samples=None, seed=None):
    R = normalize_subset(d, R)
    analysis = settings.MAXPOOL_ANALYSIS
    samples = analysis["DEFAULT_SAMPLES"] if samples is None else samples
    seed = analysis["DEFAULT_SEED"] if seed is None else seed
    fit = fit_optimal(d, R)
    eps = fit.err / 4 if eps is None else to_exact(eps)

    lemma = measure_lower_bound(d, R, eps)
    sharper = intercept_measure_bound(d, R, eps)
    sampled = random_error(fit.estimator, samples, seed, eps=eps)
    slack = three_sigma(sampled.exceed_fraction, samples)
    logger.info("Measure check d=%d R=%s: empirical %.6f vs bound %s.", d, R, sampled.exceed_fraction, lemma)
    return {
        "d": d,
        "R": list(R),
        "err": exact_pair(fit.err),
        "eps": exact_pair(eps),
        "lemma_bound": exact_pair(lemma),
        "intercept_bound": exact_pair(sharper) if sharper is not None else None,
        "samples": samples,
        "seed": seed,
        "empirical_fraction": sampled.exceed_fraction,
        "stderr": sampled.exceed_stderr,
        "consistent": sampled.exceed_fraction >= decimal_value(lemma) - slack,
    }


# -----------------------------
# Run manifests
# -----------------------------
def manifest_block(command, parameters, seed=None):
    return {
        "command": command,
        "parameters": jsonable(parameters),
        "seed": seed,
        "version": settings.VERSION,
    }


def record_run(command, parameters, seed=None, outputs=()):
    manifest = RunManifest.objects.create(
        command=command,
        parameters=jsonable(parameters),
        seed=seed,
        version=settings.VERSION,
        outputs=list(outputs),
    )
    logger.info("Recorded run %s of %s.", manifest.pk, command)
    return manifest
