"""Structured pass/fail reports with witnesses.

Verifiers never answer with a bare boolean: each failed identity is recorded
with a code and the witness arguments, so mutation tests and diagnostics can
point at the exact offending entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Failure:
    code: str
    message: str
    witness: object = None

    def __str__(self):
        w = f" [witness: {self.witness}]" if self.witness is not None else ""
        return f"{self.code}: {self.message}{w}"


@dataclass
class Report:
    title: str
    failures: list[Failure] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, code: str, message: str, witness=None):
        self.failures.append(Failure(code, message, witness))

    def tick(self, n: int = 1):
        self.checked += n

    def codes(self) -> set[str]:
        return {f.code for f in self.failures}

    def merge(self, other: "Report"):
        self.failures.extend(other.failures)
        self.checked += other.checked

    def __str__(self):
        head = f"{self.title}: {'ok' if self.ok else 'FAILED'} ({self.checked} checks)"
        return "\n".join([head] + [f"  {f}" for f in self.failures])
