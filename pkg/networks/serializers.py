import io

from django.conf import settings
from rest_framework import serializers
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from estimators.exceptions import AnalysisError
from estimators.serializers import RationalField

from .relu import ACTIVATIONS, DenseLayer, ReluNetwork

NETWORK_KINDS = ("pairwise", "d1", "heaviside")
MIN_DIMENSION = {"pairwise": 2, "d1": 3, "heaviside": 1}


# -----------------------------
# Network JSON schema
# -----------------------------
class LayerSerializer(serializers.Serializer):
    weights = serializers.ListField(child=serializers.ListField(child=RationalField()))
    bias = serializers.ListField(child=RationalField())
    activation = serializers.ChoiceField(choices=ACTIVATIONS)
    annotations = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=1)),
        required=False,
        allow_null=True,
        default=None,
    )
    units_per_value = serializers.IntegerField(min_value=1, default=1)
    weights_f64 = serializers.SerializerMethodField()

    def get_weights_f64(self, obj):
        return [[float(w) for w in row] for row in obj.weights]

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if not self.context.get("with_f64"):
            data.pop("weights_f64")
        return data


class NetworkSerializer(serializers.Serializer):
    """
    {"input_dim", "output_dim", "layers": [...]} with exact "p/q" weights.
    "weights_f64" is advisory on output and ignored on input.
    """
    input_dim = serializers.IntegerField(min_value=1)
    output_dim = serializers.IntegerField(min_value=1)
    layers = LayerSerializer(many=True)

    def validate(self, attrs):
        try:
            attrs["network"] = ReluNetwork(
                input_dim=attrs["input_dim"],
                output_dim=attrs["output_dim"],
                layers=tuple(DenseLayer.build(**layer) for layer in attrs["layers"]),
            )
        except AnalysisError as exc:
            raise serializers.ValidationError({"layers": str(exc)})
        return attrs

    def create(self, validated_data):
        return validated_data["network"]


def network_to_json(net: ReluNetwork, with_f64=False) -> bytes:
    data = NetworkSerializer(net, context={"with_f64": with_f64}).data
    return JSONRenderer().render(data, renderer_context={"indent": 2})


def network_from_json(raw) -> ReluNetwork:
    """Parse network JSON; raises ParseError (with location) or ValidationError."""
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    data = JSONParser().parse(io.BytesIO(raw))
    serializer = NetworkSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


# -----------------------------
# Query Serializers
# -----------------------------
class WidthsQuerySerializer(serializers.Serializer):
    d = serializers.IntegerField(min_value=3, max_value=settings.MAXPOOL_ANALYSIS["D_MAX"])


class BuildQuerySerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=NETWORK_KINDS)
    d = serializers.IntegerField(min_value=1, max_value=settings.MAXPOOL_ANALYSIS["D_MAX"])
    xi = RationalField(required=False, default=0)

    def validate(self, attrs):
        least = MIN_DIMENSION[attrs["kind"]]
        if attrs["d"] < least:
            raise serializers.ValidationError({"d": f"{attrs['kind']} networks need d >= {least}."})
        return attrs


class EvaluateSerializer(serializers.Serializer):
    """Either an explicit network or a (kind, d, xi) recipe, plus the input x."""
    network = NetworkSerializer(required=False)
    kind = serializers.ChoiceField(choices=NETWORK_KINDS, required=False)
    d = serializers.IntegerField(min_value=1, max_value=settings.MAXPOOL_ANALYSIS["D_MAX"], required=False)
    xi = RationalField(required=False, default=0)
    x = serializers.ListField(child=RationalField(), allow_empty=False)

    def validate(self, attrs):
        if "network" in attrs:
            return attrs
        if "kind" not in attrs:
            raise serializers.ValidationError({"network": "Provide a network or a kind."})
        attrs.setdefault("d", len(attrs["x"]))
        least = MIN_DIMENSION[attrs["kind"]]
        if attrs["d"] < least:
            raise serializers.ValidationError({"d": f"{attrs['kind']} networks need d >= {least}."})
        return attrs
