"""Verification reports: named checks with pass/fail and a residual detail."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    detail: Any = None

    def to_dict(self) -> dict:
        from .render import to_jsonable

        out = {"name": self.name, "passed": self.passed}
        if self.detail is not None:
            out["detail"] = to_jsonable(self.detail)
        return out


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, name: str, passed: bool, detail: Any = None) -> Check:
        c = Check(name, bool(passed), detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> "Report":
        for c in other.checks:
            self.checks.append(Check(f"{other.suite}:{c.name}", c.passed, c.detail))
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}

    def to_text(self) -> str:
        from .render import emit

        lines = []
        for c in self.checks:
            line = f"{'PASS' if c.passed else 'FAIL'} {self.suite}:{c.name}"
            if not c.passed and c.detail is not None:
                line += f"  residual: {emit(c.detail)}"
            lines.append(line)
        lines.append(f"{self.suite}: {'PASS' if self.passed else 'FAIL'} "
                     f"({len(self.checks) - len(self.failures())}/{len(self.checks)})")
        return "\n".join(lines)
