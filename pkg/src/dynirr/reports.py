"""
Report containers shared by the family modules, the certifiers and the runner.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

from .config import Verdict


@dataclass
class CheckResult:
    """Outcome of one named check."""
    name: str
    verdict: Verdict
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.verdict != Verdict.FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {"check": self.name, "verdict": self.verdict.value, "details": jsonable(self.details)}


@dataclass
class StructureReport:
    """A list of checks about one subject (a family instance, a context, a table row)."""
    subject: str
    params: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, **details) -> CheckResult:
        """Record a pass/fail check."""
        result = CheckResult(name, Verdict.PASS if ok else Verdict.FAIL, details)
        self.checks.append(result)
        return result

    def add_info(self, name: str, **details) -> CheckResult:
        result = CheckResult(name, Verdict.INFO, details)
        self.checks.append(result)
        return result

    def extend(self, other: "StructureReport"):
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(self.checks)

    def __bool__(self):
        return self.passed

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c]

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "params": jsonable(self.params),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }


def jsonable(value: Any) -> Any:
    """Integers beyond 64 bits become decimal strings; enums become their values."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value if -(1 << 63) <= value < (1 << 63) else str(value)
    if isinstance(value, Verdict):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (float, str)):
        return value
    return str(value)


