"""Check reports and their byte-stable JSON serialization.

The JSON schema is fixed: {check, params, seed, samples, failures, verdict}
with failures entries {input, expected, got, witness?}.  Exact rationals are
rendered as strings like "3" or "-10/7", never as floating point, and key
order is the insertion order above, so identical configurations serialize to
byte-identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


def format_rational(q) -> str:
    return str(Fraction(q))


@dataclass
class CheckFailure:
    input: str
    expected: str
    got: str
    witness: str | None = None

    def to_dict(self) -> dict:
        d = {"input": self.input, "expected": self.expected, "got": self.got}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class CheckReport:
    check: str
    params: dict
    seed: int
    samples: int
    failures: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    def add_failure(self, input: str, expected: str, got: str, witness: str | None = None):
        self.failures.append(CheckFailure(input, expected, got, witness))

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": {k: str(v) for k, v in self.params.items()},
            "seed": self.seed,
            "samples": self.samples,
            "failures": [f.to_dict() for f in self.failures],
            "verdict": self.verdict,
        }


def report_to_json(report: CheckReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def report_to_text(report: CheckReport) -> str:
    lines = [f"check: {report.check}"]
    for k, v in report.params.items():
        lines.append(f"  {k}: {v}")
    lines.append(f"seed: {report.seed}")
    lines.append(f"samples: {report.samples}")
    if report.failures:
        lines.append(f"failures: {len(report.failures)}")
        for f in report.failures[:20]:
            w = f" witness={f.witness}" if f.witness else ""
            lines.append(f"  input={f.input} expected={f.expected} got={f.got}{w}")
        if len(report.failures) > 20:
            lines.append(f"  ... {len(report.failures) - 20} more")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"
