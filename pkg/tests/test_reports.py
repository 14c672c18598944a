import json

import pytest
from pydantic import ValidationError

from bialgebroid.core.reports import CheckReport, CheckResult, RunReport


class Residual:
    def __init__(self, text: str = ""):
        self.text = text

    def is_zero(self) -> bool:
        return not self.text

    def render(self) -> str:
        return self.text


def test_record_stops_at_first_failure():
    seen = []

    def cases():
        for i in range(5):
            seen.append(i)
            yield {"i": i}, Residual("bad" if i == 2 else "")

    report = CheckReport()
    result = report.record("demo", "x = x", cases())
    assert seen == [0, 1, 2]
    assert result.status == "fail"
    assert result.counterexample.inputs == {"i": "2"}
    assert result.counterexample.residual == "bad"
    assert not report.passed
    assert report.failures() == [result]


def test_empty_and_passing_reports():
    report = CheckReport()
    assert report.passed
    report.record("ok", "0 = 0", [({}, Residual())])
    assert report.passed
    assert report.get("ok").counterexample is None
    with pytest.raises(KeyError):
        report.get("missing")


def test_failed_result_needs_a_counterexample():
    with pytest.raises(ValidationError):
        CheckResult(name="demo", ref="x = x", status="fail")


def test_extend_prefixes_names():
    inner = CheckReport()
    inner.record("closed", "dφ = 0", [({}, Residual())])
    outer = CheckReport().extend(inner, "phi.")
    assert [check.name for check in outer.checks] == ["phi.closed"]
    assert [check.name for check in inner.checks] == ["closed"]


def test_render_text():
    report = CheckReport()
    report.record("good", "a = a", [({}, Residual())])
    report.record("bad", "b = c", [({"X": "e[1]"}, Residual("e[2]"))])
    assert report.render_text() == "\n".join(
        [
            "[PASS] good: a = a",
            "[FAIL] bad: b = c",
            "    X = e[1]",
            "    residual = e[2]",
        ]
    )


def test_run_report_json_is_deterministic():
    report = CheckReport()
    report.record("bad", "b = c", [({"X": "e[1]"}, Residual("e[2]"))])

    def dump() -> str:
        run = RunReport(command="validate", seed=0, checks=report.checks, artifacts={"E": "e[3]"})
        return run.model_dump_json(indent=2, exclude_none=True, by_alias=True)

    assert dump() == dump()
    data = json.loads(dump())
    assert data["checks"][0]["counterexample"] == {"inputs": {"X": "e[1]"}, "residual": "e[2]"}
    assert data["artifacts"] == {"E": "e[3]"}
