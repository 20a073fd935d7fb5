import json
from fractions import Fraction

import pytest
from rest_framework.exceptions import ParseError, ValidationError

from networks.builders import d1_estimator_network, heaviside_gate
from networks.relu import forward
from networks.serializers import BuildQuerySerializer, EvaluateSerializer, network_from_json, network_to_json


def test_export_is_byte_identical_after_reload():
    raw = network_to_json(d1_estimator_network(4))
    assert network_to_json(network_from_json(raw)) == raw


def test_weights_are_exact_strings():
    data = json.loads(network_to_json(heaviside_gate(2, Fraction(1, 3))))
    hidden = data["layers"][0]
    assert hidden["bias"] == ["-1/3", "-1/3"]
    assert hidden["weights"][0] == ["1/1", "0/1"]
    assert hidden["annotations"] == [[1], [2]]
    assert "weights_f64" not in hidden


def test_advisory_floats_are_optional_and_ignored_on_input():
    net = heaviside_gate(2, Fraction(1, 3))
    raw = network_to_json(net, with_f64=True)
    assert json.loads(raw)["layers"][0]["weights_f64"][0] == [1.0, 0.0]
    reloaded = network_from_json(raw)
    assert forward(reloaded, (1, 0)) == forward(net, (1, 0)) == (Fraction(2, 3),)


def test_malformed_json_reports_a_location():
    with pytest.raises(ParseError) as excinfo:
        network_from_json('{"input_dim": 2,,}')
    assert "line 1" in str(excinfo.value.detail)


def test_layers_that_do_not_compose_are_rejected():
    data = json.loads(network_to_json(heaviside_gate(2, 0)))
    data["input_dim"] = 3
    with pytest.raises(ValidationError):
        network_from_json(json.dumps(data))


def test_non_rational_weight_is_rejected():
    data = json.loads(network_to_json(heaviside_gate(2, 0)))
    data["layers"][0]["weights"][0][0] = "one"
    with pytest.raises(ValidationError):
        network_from_json(json.dumps(data))


@pytest.mark.parametrize(
    "params, valid",
    [
        ({"kind": "pairwise", "d": 2}, True),
        ({"kind": "pairwise", "d": 1}, False),
        ({"kind": "d1", "d": 2}, False),
        ({"kind": "heaviside", "d": 1, "xi": "1/2"}, True),
        ({"kind": "sorting", "d": 4}, False),
    ],
)
def test_build_query(params, valid):
    assert BuildQuerySerializer(data=params).is_valid() is valid


def test_evaluate_needs_network_or_kind():
    serializer = EvaluateSerializer(data={"x": ["1", "2"]})
    assert not serializer.is_valid()
    assert "network" in serializer.errors


def test_evaluate_defaults_dimension_to_input_length():
    serializer = EvaluateSerializer(data={"kind": "pairwise", "x": ["1/2", "3", "-1"]})
    assert serializer.is_valid(), serializer.errors
    assert serializer.validated_data["d"] == 3
