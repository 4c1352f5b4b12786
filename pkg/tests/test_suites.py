"""Verification suites: all pass, and their reports are deterministic."""
import json

import pytest

from weylrack.suites import SUITES, run_suite

# small parameter overrides so the whole file stays fast; the acceptance test
# runs the full-size versions
FAST_PARAMS = {
    "group_laws": {"count": 2000},
    "rack_axioms": {"count": 2000},
    "juxtaposition": {"max_total": 4},
    "classification": {"ranks": [5], "groups": ["B"]},
}


@pytest.mark.parametrize("name", SUITES)
def test_suite_passes(name):
    report = run_suite(name, FAST_PARAMS.get(name), seed=0)
    assert report["suite"] == name
    assert report["passed"], [c for c in report["checks"] if not c["passed"]]


@pytest.mark.parametrize("name", SUITES)
def test_suite_reports_are_byte_identical(name):
    params = FAST_PARAMS.get(name)
    a = run_suite(name, params, seed=123)
    b = run_suite(name, params, seed=123)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_report_shape():
    report = run_suite("fk_dims", {"max_n": 3})
    for check in report["checks"]:
        assert set(check) >= {"name", "tag", "passed"}
    json.dumps(report)  # JSON-serializable throughout
