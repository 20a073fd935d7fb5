import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError


def run(name, *args, **options):
    out = StringIO()
    call_command(name, *args, stdout=out, **options)
    return out.getvalue()


# -----------------------------
# network_widths
# -----------------------------
def test_network_widths_json():
    data = json.loads(run("network_widths", d=10))
    assert data["depth"] == 4
    assert data["value_widths"] == [17, 16, 12, 10]
    assert data["relu_widths"] == [68, 64, 48, 40]
    assert data["repeated_counts"][:3] == [9, 6, 2]
    assert data["split_tables"]["3"][0] == ["1 2 3 4 5", "5 6 7 8 9"]
    assert data["manifest"]["parameters"] == {"d": 10}


def test_network_widths_text():
    text = run("network_widths", d=9, format="text")
    assert text.startswith("d=9 depth=3 value widths [12, 10, 9]")
    assert "layer 2: 10 tuples" in text


def test_network_widths_full_estimator_counts():
    data = json.loads(run("network_widths", d=9))
    assert data["full_estimator_widths"] == [36, 84, 126, 126, 84, 36]
    assert data["full_estimator_subpool_maxes"] == 9 + 492


def test_network_widths_small_dimension():
    with pytest.raises(CommandError) as excinfo:
        run("network_widths", d=2)
    assert excinfo.value.returncode == 2


# -----------------------------
# relu_net
# -----------------------------
def test_build_prints_bare_network():
    data = json.loads(run("relu_net", "build", kind="pairwise", d=3))
    assert data["input_dim"] == 3
    assert len(data["layers"]) == 3
    assert "manifest" not in data


def test_eval_built_network():
    data = json.loads(run("relu_net", "eval", kind="d1", d=3, x="1,0,0"))
    assert data["output"] == ["5/6"]
    assert data["input"] == ["1", "0", "0"]
    assert data["manifest"]["command"] == "relu_net"


def test_eval_heaviside_threshold():
    data = json.loads(run("relu_net", "eval", kind="heaviside", d=2, xi="1/2", x="1/4,1/3"))
    assert data["output"] == ["0/1"]


def test_export_round_trip(tmp_path):
    path = tmp_path / "net.json"
    run("relu_net", "build", kind="d1", d=5, out=str(path))
    original = path.read_text(encoding="utf-8")
    assert run("relu_net", "export", network=str(path)) == original


def test_export_keeps_float_weights_from_input(tmp_path):
    path = tmp_path / "net.json"
    run("relu_net", "build", kind="pairwise", d=4, with_f64=True, out=str(path))
    original = path.read_text(encoding="utf-8")
    assert "weights_f64" in original
    assert run("relu_net", "export", network=str(path)) == original


def test_eval_from_file(tmp_path):
    path = tmp_path / "net.json"
    run("relu_net", "build", kind="pairwise", d=4, with_f64=True, out=str(path))
    data = json.loads(run("relu_net", "eval", network=str(path), x="3,-1,7/2,2"))
    assert data["output"] == ["7/2"]


@pytest.mark.parametrize(
    "args, options",
    [
        (("build",), {"kind": "pairwise"}),
        (("build",), {"kind": "d1", "d": 2}),
        (("eval",), {"kind": "pairwise", "d": 3}),
        (("eval",), {"kind": "pairwise", "d": 3, "x": "1,2"}),
        (("export",), {"kind": "pairwise", "d": 3}),
        (("export",), {"network": "/nonexistent/net.json"}),
    ],
)
def test_relu_net_usage_errors(args, options):
    with pytest.raises(CommandError) as excinfo:
        run("relu_net", *args, **options)
    assert excinfo.value.returncode == 2


def test_malformed_network_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"input_dim": 2,', encoding="utf-8")
    with pytest.raises(CommandError) as excinfo:
        run("relu_net", "export", network=str(path))
    assert excinfo.value.returncode == 2
    assert "JSON parse error" in str(excinfo.value)
