import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from estimators import verification
from estimators.models import RunManifest
from estimators.verification import Check


def run(name, *args, **options):
    out = StringIO()
    call_command(name, *args, stdout=out, **options)
    return out.getvalue()


# -----------------------------
# fit_estimator / full_coefficients
# -----------------------------
def test_fit_estimator_json():
    data = json.loads(run("fit_estimator", d=3, r="2,0"))
    assert data["estimator"]["R"] == [0, 2]
    assert data["estimator"]["beta0"] == {"exact": "1/6", "decimal": 1 / 6}
    assert data["estimator"]["betas"] == [{"r": 2, "exact": "1/1", "decimal": 1.0}]
    assert data["err"]["exact"] == "1/6"
    assert data["closed_form"]["value"] == {"exact": "1/6", "decimal": 1 / 6}
    assert data["closed_form"]["matches"] is True
    assert [v["exact"] for v in data["profile"]] == ["-1/6", "1/6", "-1/6", "-1/6"]
    assert data["profile"][1]["decimal"] == 1 / 6
    assert data["certificate"]["certified"] is True
    assert data["manifest"]["command"] == "fit_estimator"
    assert data["manifest"]["parameters"] == {"d": 3, "r": "2,0"}
    assert data["manifest"]["seed"] is None


def test_fit_estimator_output_is_reproducible():
    assert run("fit_estimator", d=4, r="1,3") == run("fit_estimator", d=4, r="1,3")


@pytest.mark.parametrize("r", ["0,5", "x", ""])
def test_fit_estimator_usage_errors(r):
    with pytest.raises(CommandError) as excinfo:
        run("fit_estimator", d=3, r=r)
    assert excinfo.value.returncode == 2


def test_full_coefficients():
    data = json.loads(run("full_coefficients", d=3))
    assert data["estimator"]["beta0"] == {"exact": "1/8", "decimal": 0.125}
    assert [b["exact"] for b in data["estimator"]["betas"]] == ["-3/4", "3/2"]
    assert data["bound"]["exact"] == "1/8"
    assert data["bound_attained"] is True


# -----------------------------
# error_table
# -----------------------------
def test_error_table_csv():
    lines = run("error_table", d_max=3).splitlines()
    assert lines[0] == '"d","R","err_exact","err_decimal"'
    assert lines[1] == '2,"0","1/2",0.5'
    assert '3,"0,2","1/6",0.16666666666666666' in lines
    assert len(lines) == 1 + 10


def test_error_table_json():
    data = json.loads(run("error_table", d_max=2, format="json"))
    assert [row["err"]["exact"] for row in data["rows"]] == ["1/2", "1/3", "1/4"]


@pytest.mark.parametrize("d_max", [1, 7])
def test_error_table_bounds(d_max):
    with pytest.raises(CommandError) as excinfo:
        run("error_table", d_max=d_max)
    assert excinfo.value.returncode == 2


def test_out_file(tmp_path):
    target = tmp_path / "table.csv"
    message = run("error_table", d_max=2, out=str(target))
    assert "Wrote" in message
    assert target.read_text(encoding="utf-8").startswith('"d","R"')


# -----------------------------
# l2_report / measure_bound
# -----------------------------
def test_l2_report():
    data = json.loads(run("l2_report", d=2))
    assert data["normalized_sq_error"]["exact"] == "1/72"
    assert data["alpha0_star"] == {"exact": "1/6", "decimal": 1 / 6}
    assert data["alpha_star"] == [{"exact": "1/1", "decimal": 1.0}]
    assert data["residual_orthogonal"] is True
    assert "monte_carlo" not in data


def test_l2_report_with_sampling():
    data = json.loads(run("l2_report", d=2, samples=50_000, seed=3))
    assert data["monte_carlo"]["samples"] == 50_000
    sampled = data["monte_carlo"]
    assert abs(sampled["mean_sq_error"] - 1 / 72) <= 5 * sampled["stderr"]


def test_measure_bound():
    data = json.loads(run("measure_bound", d=2, r="0,1", eps="1/16", samples=20_000))
    assert data["lemma_bound"]["exact"] == "1/256"
    assert data["intercept_bound"]["exact"] == "9/256"
    assert data["consistent"] is True


def test_measure_bound_needs_intercept():
    with pytest.raises(CommandError) as excinfo:
        run("measure_bound", d=3, r="2", samples=10)
    assert excinfo.value.returncode == 2


# -----------------------------
# verify_claims
# -----------------------------
def test_verify_claims_passes():
    data = json.loads(run("verify_claims", suite="schedule", d_max=6))
    assert data["failed"] == 0
    assert data["passed"] == len(data["checks"])
    assert {c["status"] for c in data["checks"]} == {"pass"}


def test_verify_claims_failure_exit_status(monkeypatch):
    failing = Check(name="broken", expected="1", got="2", passed=False)
    monkeypatch.setitem(verification.SUITES, "formulas", lambda config: [failing])
    out = StringIO()
    with pytest.raises(CommandError) as excinfo:
        call_command("verify_claims", suite="formulas", stdout=out)
    assert excinfo.value.returncode == 1
    assert json.loads(out.getvalue())["checks"][0]["status"] == "fail"


# -----------------------------
# Run manifests
# -----------------------------
@pytest.mark.django_db
def test_record_does_not_change_output():
    plain = run("full_coefficients", d=4)
    recorded = run("full_coefficients", d=4, record=True)
    assert plain == recorded
    manifest = RunManifest.objects.get()
    assert manifest.command == "full_coefficients"
    assert manifest.parameters == {"d": 4}
    assert json.loads(plain)["manifest"] == {
        "command": manifest.command,
        "parameters": manifest.parameters,
        "seed": manifest.seed,
        "version": manifest.version,
    }


@pytest.mark.django_db
def test_record_lists_output_files(tmp_path):
    target = tmp_path / "fit.json"
    run("fit_estimator", d=2, r="0,1", out=str(target), record=True)
    assert RunManifest.objects.get().outputs == [str(target)]
