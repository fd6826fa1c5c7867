"""Verification reports: a uniform pass/fail record with exact mismatch
payloads, produced by every identity checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one exact identity check.

    pass/fail is fully determined by the mismatch list.  seconds is kept on
    the object for humans but left out of the canonical JSON so identical
    invocations stay byte-identical."""

    name: str
    parameters: dict
    mismatches: list
    conventions: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self):
        return not self.mismatches

    def to_json(self):
        out = {
            "check": self.name,
            "parameters": self.parameters,
            "passed": self.passed,
            "mismatches": self.mismatches,
        }
        if self.conventions:
            out["conventions"] = self.conventions
        if self.details:
            out["details"] = self.details
        return out

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f" ({len(self.mismatches)} mismatching components)"
        return f"{status} {self.name}{extra}"


def degree_mismatch(degree, lhs, rhs):
    """Serialize one disagreeing multidegree coefficient pair."""
    return {"degree": list(degree), "lhs": lhs.to_json(), "rhs": rhs.to_json()}
