import json

import pytest

from simplecurrents.verify import SuiteError, labels_suite, run_suite

FAST = [
    ("characters", "A1", 6),
    ("cocycle", "Z2", 0),
    ("delta", "A1", 4),
    ("operators", "A1", 3),
    ("jacobi", "A1", 1),
]


@pytest.mark.parametrize("suite, model, cutoff", FAST)
def test_suite_passes_and_catches_injection(suite, model, cutoff):
    good = run_suite(suite, model, cutoff)
    assert good.passed, good.to_text()
    bad = run_suite(suite, model, cutoff, inject=True)
    assert not bad.passed
    failing = [r for r in bad.reports if not r.passed]
    assert all(r.failure for r in failing)


@pytest.mark.parametrize("model", ["A1", "A2", "D4", "affine-A3", "affine-D4", "affine-D5", "affine-E6", "affine-B3"])
def test_labels_suite(model):
    assert labels_suite(model, samples=30).passed
    assert not labels_suite(model, samples=30, inject=True).passed


def test_reports_are_sorted_and_serializable():
    report = run_suite("cocycle", "Z2xZ2")
    data = json.loads(json.dumps(report.to_json()))
    names = [r["name"] for r in data["identities"]]
    assert names == sorted(names)
    assert data["passed"] is True


def test_unknown_suite_and_model():
    with pytest.raises(SuiteError):
        run_suite("nope")
    with pytest.raises(SuiteError):
        run_suite("delta", "B7")


def test_cocycle_suite_on_d4_quotient():
    report = run_suite("cocycle", "D4")
    assert report.passed, report.to_text()
    assert not run_suite("cocycle", "D4", inject=True).passed
