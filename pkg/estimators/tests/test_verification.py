import pytest

from estimators.exceptions import PreconditionError
from estimators.verification import SUITES, VerifyConfig, run_suite

FAST = {
    "table": VerifyConfig(d_max=3),
    "closed-form": VerifyConfig(d_max=6),
    "full": VerifyConfig(d_max=5),
    "worked-example": VerifyConfig(),
    "schedule": VerifyConfig(d_max=12),
    "networks": VerifyConfig(d_max=6, samples=40),
    "l2": VerifyConfig(d_max=4, samples=20_000),
    "oracles": VerifyConfig(samples=2_000),
    "measure": VerifyConfig(samples=20_000),
    "formulas": VerifyConfig(samples=500),
    "subpool": VerifyConfig(d_max=5),
}


def test_every_suite_has_a_fast_configuration():
    assert set(FAST) == set(SUITES)


@pytest.mark.parametrize("name", sorted(FAST))
def test_suite_passes(name):
    checks = run_suite(name, FAST[name])
    assert checks
    failed = [c.as_dict() for c in checks if not c.passed]
    assert failed == []


def test_check_records_render_exact_values():
    check = run_suite("table", VerifyConfig(d_max=2))[0]
    assert check.as_dict() == {"name": "table d=2 R={1}", "expected": "1/3", "got": "1/3", "status": "pass"}


def test_unknown_suite():
    with pytest.raises(PreconditionError):
        run_suite("everything")


@pytest.mark.slow
def test_all_suites_with_defaults():
    assert all(c.passed for c in run_suite("all"))
