import json

import pytest

from config import Settings
from exceptions import InconsistentTableError, ResourceCapExceeded, VerificationError
from models import Report, Status, jsonable
from suite import Outcome, Scenario, plan, run_scenario, run_suite


def _settings(**overrides):
    base = dict(Q_VALUES=[3], CLASSES=[24], MODES=["sc"], ORDER_CHECK_Q=[9], WORKERS=2)
    base.update(overrides)
    return Settings(**base)


def test_plan_with_no_classes_is_empty():
    assert plan(_settings(CLASSES=[])) == []


def test_plan_cells():
    settings = _settings(CLASSES=[7, 14], Q_VALUES=[3, 4], MODES=["sc", "adjoint"])
    scenarios = plan(settings)
    keys = [(s.check, s.class_index, s.q, s.mode) for s in scenarios]
    assert len(keys) == len(set(keys))
    assert keys[0] == ("golden", None, None, None)
    # orders run over ORDER_CHECK_Q and Q_VALUES together
    assert {q for c, _, q, _ in keys if c == "orders"} == {3, 4, 9}
    # obstructions and complements only at odd q
    assert {q for c, _, q, _ in keys if c in ("obstructions", "complements")} == {3}
    # the class 14 complement needs q = 1 mod 4
    assert not [k for k in keys if k[0] == "complements" and k[1] == 14]
    assert len([k for k in keys if k[0] == "decide"]) == 2 * 2 * 2


def test_plan_respects_checks():
    scenarios = plan(_settings(CHECKS=["tits"]))
    assert [s.check for s in scenarios] == ["tits"]


@pytest.mark.parametrize("error, status", [
    (ResourceCapExceeded("field size", 10, 20), Status.SKIPPED),
    (VerificationError("relation fails", {"class": 7}), Status.MISMATCH),
    (InconsistentTableError("bad table"), Status.ERROR),
    (RuntimeError("boom"), Status.ERROR),
])
def test_run_scenario_maps_exceptions(error, status):
    def run():
        raise error

    record = run_scenario(Scenario("decide", run, 7, 3, "sc"), _settings())
    assert record.status is status
    assert "reason" in record.detail
    assert record.elapsed_ms is None


def test_run_scenario_outcomes():
    settings = _settings(INCLUDE_TIMINGS=True)
    passed = run_scenario(Scenario("orders", lambda: Outcome(True, 757, 757), 24, 3), settings)
    failed = run_scenario(Scenario("orders", lambda: Outcome(False, 757, 758), 24, 3), settings)
    assert passed.status is Status.PASS
    assert failed.status is Status.MISMATCH
    assert (failed.expected, failed.observed) == (757, 758)
    assert passed.elapsed_ms is not None


def test_jsonable():
    import numpy as np

    value = {"n": np.int64(3), "a": (np.bool_(True), np.array([1, 2])), "obj": np.array([7], dtype=object)}
    assert jsonable(value) == {"n": 3, "a": [True, [1, 2]], "obj": [7]}
    json.dumps(jsonable(value))


def test_jsonable_rejects_unknown_objects():
    from pydantic_core import PydanticSerializationError

    with pytest.raises((TypeError, PydanticSerializationError)):
        jsonable({"x": object()})


@pytest.mark.asyncio
async def test_small_suite_passes():
    settings = _settings(CHECKS=["golden", "tits", "orders"])
    report = await run_suite(settings)
    assert report.summary.verdict is Status.PASS
    assert report.exit_code == 0
    assert [r.key for r in report.records] == [
        "golden", "tits", "orders class=24 q=3", "orders class=24 q=9",
    ]
    nine = report.records[-1]
    assert nine.expected == nine.observed == 532171
    assert "WORKERS" not in report.config
    payload = json.loads(report.to_json())
    assert payload["summary"]["total"] == 4


@pytest.mark.asyncio
async def test_empty_suite():
    report = await run_suite(_settings(CLASSES=[]))
    assert report.records == []
    assert report.summary.verdict is Status.PASS


@pytest.mark.asyncio
async def test_report_is_independent_of_worker_count():
    settings = dict(CHECKS=["orders", "decide"], ORDER_CHECK_Q=[3], CLASSES=[7, 24])
    one = await run_suite(_settings(WORKERS=1, **settings))
    many = await run_suite(_settings(WORKERS=4, **settings))
    assert one.to_json() == many.to_json()


def test_report_exit_codes():
    def record(status):
        return run_scenario(Scenario("x", lambda: Outcome(status == Status.PASS)), _settings())

    ok = record(Status.PASS)
    bad = record(Status.MISMATCH)
    assert Report.build({}, [ok]).exit_code == 0
    assert Report.build({}, [ok, bad]).exit_code == 1
    skipped = ok.model_copy(update={"status": Status.SKIPPED})
    assert Report.build({}, [ok, skipped]).exit_code == 2
    assert Report.build({}, [skipped, bad]).exit_code == 1


def test_obstruction_outcome_compares_verdicts(monkeypatch):
    import split
    import suite

    def fake(group, table, class_index, q, mode, settings, strict=True):
        assert not strict
        return split.ObstructionResult(class_index=class_index, q=q, mode=mode, solvable=True,
                                       expected_solvable=False, ambient_k=2, relations=["N1^2"])

    monkeypatch.setattr(split, "obstruction_check", fake)
    outcome = suite.obstruction_check(7, 3, "sc", _settings())
    assert not outcome.passed
    assert (outcome.expected, outcome.observed) == (False, True)
    assert outcome.detail["class"] == 7
    record = run_scenario(Scenario("obstructions", lambda: outcome, 7, 3, "sc"), _settings())
    assert record.status is Status.MISMATCH


def test_obstruction_outcome_passes_on_agreement():
    import suite

    outcome = suite.obstruction_check(7, 3, "sc", _settings())
    assert outcome.passed
    assert outcome.observed is False
