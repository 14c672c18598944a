"""Check reports: one entry per verified identity, with a counterexample on failure."""
from __future__ import annotations

import logging
from typing import Any, Iterable, Literal, Mapping, Optional, Protocol

from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)

__all__ = ["Counterexample", "CheckResult", "CheckReport", "RunReport", "Residual"]


class Residual(Protocol):
    def is_zero(self) -> bool: ...

    def render(self) -> str: ...


class Counterexample(BaseModel):
    inputs: dict[str, str]
    residual: str


class CheckResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    ref: str = Field(alias="paper_ref")
    status: Literal["pass", "fail"]
    counterexample: Optional[Counterexample] = None

    @model_validator(mode="after")
    def _fail_has_counterexample(self) -> "CheckResult":
        if self.status == "fail" and self.counterexample is None:
            raise ValueError(f"failed check {self.name!r} carries no counterexample")
        return self


class CheckReport(BaseModel):
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.status == "pass" for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if check.status == "fail"]

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def record(
        self,
        name: str,
        ref: str,
        cases: Iterable[tuple[Mapping[str, Any], Residual]],
    ) -> CheckResult:
        """Evaluate `cases` lazily and stop at the first nonzero residual."""
        count = 0
        result = CheckResult(name=name, ref=ref, status="pass")
        for inputs, residual in cases:
            count += 1
            if not residual.is_zero():
                result = CheckResult(
                    name=name,
                    ref=ref,
                    status="fail",
                    counterexample=Counterexample(
                        inputs={key: _render(value) for key, value in inputs.items()},
                        residual=residual.render(),
                    ),
                )
                break
        logger.debug("[reports.record] %s: %s after %d case(s)", name, result.status, count)
        self.checks.append(result)
        return result

    def extend(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for check in other.checks:
            self.checks.append(check.model_copy(update={"name": prefix + check.name}))
        return self

    def render_text(self) -> str:
        lines = []
        for check in self.checks:
            lines.append(f"[{check.status.upper()}] {check.name}: {check.ref}")
            if check.counterexample is not None:
                for key, value in check.counterexample.inputs.items():
                    lines.append(f"    {key} = {value}")
                lines.append(f"    residual = {check.counterexample.residual}")
        return "\n".join(lines)


class RunReport(BaseModel):
    """Machine-readable output of one CLI command."""

    command: str
    seed: int
    checks: list[CheckResult] = Field(default_factory=list)
    artifacts: dict[str, str] = Field(default_factory=dict)


def _render(value: Any) -> str:
    render = getattr(value, "render", None)
    if callable(render):
        return render()
    return str(value)
