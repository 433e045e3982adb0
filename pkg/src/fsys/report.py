"""Structured check results shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

FORMAT_VERSION = 1

PASS = "pass"
FAIL = "fail"
WARN = "warn"
SKIP = "skip"


@dataclass
class CheckResult:
    """One named check: status, optional first witness, and a violation count.

    The witness is the first violation in deterministic iteration order; the
    count covers all violations found. Everything stored here must be
    JSON-serializable (labels as strings, exact values as wire strings).
    """

    name: str
    status: str
    detail: str = ""
    witness: dict[str, Any] | None = None
    violations: int = 0

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if self.violations:
            out["violations"] = self.violations
        return out


@dataclass
class Report:
    """Aggregate outcome of a verification or decision run.

    `outcome` is one of: pass, fail, partial, fusion-only, equivalent,
    inequivalent, not-applicable. `values` holds exact data (wire strings);
    approximate float renderings live under the reserved key "approximate" so
    they can never be confused with exact content.
    """

    outcome: str
    checks: list[CheckResult] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)

    def ok(self) -> bool:
        return self.outcome in (PASS, "equivalent", "fusion-only")

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "format_version": FORMAT_VERSION,
            "outcome": self.outcome,
            "checks": [c.to_dict() for c in self.checks],
            "values": self.values,
        }


def combine(checks: list[CheckResult], values: dict[str, Any] | None = None) -> Report:
    """Fold named checks into a report: fail dominates, otherwise pass.

    Warnings and skips do not fail the aggregate.
    """
    outcome = FAIL if any(c.status == FAIL for c in checks) else PASS
    return Report(outcome=outcome, checks=checks, values=values or {})
