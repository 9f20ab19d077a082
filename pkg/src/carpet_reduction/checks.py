from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    """Outcome of an exact verification: pass flag, counterexamples, slacks."""

    passed: bool
    witnesses: list[Any] = field(default_factory=list)
    slacks: list[Any] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def combine(cls, results: list["CheckResult"], **details) -> "CheckResult":
        return cls(
            all(r.passed for r in results),
            [w for r in results for w in r.witnesses],
            [s for r in results for s in r.slacks],
            details,
        )
