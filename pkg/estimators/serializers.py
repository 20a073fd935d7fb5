from django.conf import settings
from rest_framework import serializers

from .exact import decimal_value, format_rational, to_exact
from .exceptions import AnalysisError, PreconditionError
from .fitting import closed_form_error, normalize_subset
from .models import RunManifest

ANALYSIS = settings.MAXPOOL_ANALYSIS


# -----------------------------
# Fields
# -----------------------------
class RationalField(serializers.Field):
    """Exact rational as the string "p/q"; accepts "p/q", decimals and numbers."""
    default_error_messages = {
        "invalid": 'Expected a rational number such as "3/4", "0.25" or 2.',
    }

    def to_representation(self, value):
        return format_rational(value)

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail("invalid")
        try:
            return to_exact(data)
        except AnalysisError:
            self.fail("invalid")


class ExactValueField(serializers.Field):
    """Read-only {"exact": "p/q", "decimal": float} pair."""

    def __init__(self, **kwargs):
        kwargs["read_only"] = True
        super().__init__(**kwargs)

    def to_representation(self, value):
        return exact_pair(value)


class SubsetField(serializers.Field):
    """Order set R given as "0,8" or [0, 8]."""
    default_error_messages = {
        "invalid": 'Expected a comma-separated list of integers such as "0,8".',
    }

    def to_representation(self, value):
        return list(value)

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [part for part in data.split(",") if part.strip()]
        if not isinstance(data, (list, tuple)):
            self.fail("invalid")
        try:
            return tuple(int(str(v).strip()) for v in data)
        except ValueError:
            self.fail("invalid")


def exact_pair(value):
    return {"exact": format_rational(value), "decimal": decimal_value(value)}


def exact_pairs(values):
    return [exact_pair(v) for v in values]


# -----------------------------
# Query Serializers
# -----------------------------
class DimensionQuerySerializer(serializers.Serializer):
    d = serializers.IntegerField(min_value=2, max_value=ANALYSIS["FIT_D_MAX"])


class FitQuerySerializer(DimensionQuerySerializer):
    r = SubsetField()

    def validate(self, attrs):
        try:
            attrs["r"] = normalize_subset(attrs["d"], attrs["r"])
        except PreconditionError as exc:
            raise serializers.ValidationError({"r": str(exc)})
        return attrs


class TableQuerySerializer(serializers.Serializer):
    d_max = serializers.IntegerField(min_value=2, max_value=ANALYSIS["TABLE_D_MAX"])


class MeasureQuerySerializer(FitQuerySerializer):
    eps = RationalField(required=False, allow_null=True, default=None)
    samples = serializers.IntegerField(min_value=1, default=ANALYSIS["DEFAULT_SAMPLES"])
    seed = serializers.IntegerField(min_value=0, default=ANALYSIS["DEFAULT_SEED"])


# -----------------------------
# Report Serializers
# -----------------------------
class EstimatorSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    R = SubsetField()
    beta0 = ExactValueField(allow_null=True)
    betas = serializers.SerializerMethodField()

    def get_betas(self, obj):
        return [
            {"r": r, "exact": format_rational(b), "decimal": decimal_value(b)}
            for r, b in obj.betas
        ]


class SolveReportSerializer(serializers.Serializer):
    estimator = EstimatorSerializer()
    err = ExactValueField()
    profile = serializers.ListField(child=ExactValueField())
    closed_form = serializers.SerializerMethodField()
    certificate = serializers.SerializerMethodField()

    def get_closed_form(self, obj):
        known = closed_form_error(obj.estimator.d, obj.estimator.R)
        if known is None:
            return None
        return {
            "kind": known.kind,
            "value": exact_pair(known.value),
            "matches": known.value == obj.err if known.kind == "exact" else obj.err <= known.value,
        }

    def get_certificate(self, obj):
        fit = obj.certificate
        return {
            "certified": fit.solution.certify(),
            "pivots": fit.solution.iterations,
            "active_points": list(fit.active),
        }


class TableRowSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    R = SubsetField()
    err = ExactValueField()


class L2ReportSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    alpha_star = serializers.ListField(child=ExactValueField())
    alpha0_star = ExactValueField()
    normalized_sq_error = ExactValueField()
    sigma = serializers.SerializerMethodField()
    xi = serializers.SerializerMethodField()

    def get_sigma(self, obj):
        return [exact_pairs(row) for row in obj.Sigma.to_rows()]

    def get_xi(self, obj):
        return [exact_pairs(row) for row in obj.Xi.to_rows()]


class RunManifestSerializer(serializers.ModelSerializer):
    class Meta:
        model = RunManifest
        fields = ["id", "command", "parameters", "seed", "version", "outputs", "created_at"]
        read_only_fields = fields
