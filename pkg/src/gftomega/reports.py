"""Small result records shared by the bound checks and the CLI suites."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass(frozen=True)
class BoundReport:
    """A measured quantity against a closed-form bound.

    ``sense`` is ``"upper"`` when the measurement must not exceed the bound and
    ``"lower"`` when it must not fall below it; ``slack`` is positive in the
    good direction either way.
    """

    label: str
    measured: float
    bound: float
    sense: str = "upper"
    tol: float = 0.0
    inputs: dict[str, Any] = field(default_factory=dict)

    @property
    def slack(self) -> float:
        if self.sense == "upper":
            return self.bound - self.measured
        return self.measured - self.bound

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol

    def to_dict(self) -> dict:
        out = asdict(self)
        out["slack"] = self.slack
        out["passed"] = self.passed
        return out


@dataclass
class Check:
    label: str
    passed: bool
    measured: Any = None
    expected: Any = None
    slack: float | None = None

    def to_dict(self) -> dict:
        slack = self.slack
        if isinstance(slack, float) and not math.isfinite(slack):
            slack = None
        return {
            "label": self.label,
            "passed": bool(self.passed),
            "measured": _plain(self.measured),
            "expected": _plain(self.expected),
            "slack": _plain(slack),
        }


def _plain(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "item"):
        return value.item()
    return value


@dataclass
class SuiteReport:
    """Outcome of one verification suite; ``ok`` iff every check passed."""

    name: str
    checks: list[Check] = field(default_factory=list)

    def add(self, label, passed, measured=None, expected=None, slack=None) -> Check:
        check = Check(label, bool(passed), measured, expected, slack)
        self.checks.append(check)
        return check

    def add_report(self, report: BoundReport, prefix: str = "") -> Check:
        return self.add(
            f"{prefix}{report.label}", report.passed, report.measured, report.bound, report.slack
        )

    @property
    def n_passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def n_failed(self) -> int:
        return len(self.checks) - self.n_passed

    @property
    def ok(self) -> bool:
        return self.n_failed == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.n_passed,
            "failed": self.n_failed,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }
