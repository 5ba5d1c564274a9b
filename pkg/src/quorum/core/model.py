"""Tasks, candidates, verdicts, and solver/verifier bindings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .answers import ANSWER_KINDS, AnswerValue


@dataclass(frozen=True)
class VerifierBinding:
    """Reference to a registered verifier plus its parameters."""

    kind: str
    params: dict = field(default_factory=dict)

    def accepts(self, answer_kind: str) -> bool:
        from .verify import verifier_accepts  # local import to avoid a cycle

        return verifier_accepts(self.kind, answer_kind)


@dataclass(frozen=True)
class Task:
    id: str
    category: str
    prompt: str
    answer_kind: str
    reference: Optional[AnswerValue] = None
    verifier: Optional[VerifierBinding] = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("task id must be non-empty")
        if self.answer_kind not in ANSWER_KINDS:
            raise ValueError(f"unknown answer kind {self.answer_kind!r}")
        if self.reference is not None and self.reference.kind != self.answer_kind:
            raise ValueError(
                f"reference kind {self.reference.kind!r} does not match task kind {self.answer_kind!r}"
            )
        if self.verifier is not None and not self.verifier.accepts(self.answer_kind):
            raise ValueError(
                f"verifier {self.verifier.kind!r} does not accept answer kind {self.answer_kind!r}"
            )


@dataclass(frozen=True)
class Candidate:
    """One solver's proposed answer for one task."""

    answer: Optional[AnswerValue]
    solver_id: str
    method_id: str
    seed: int
    elapsed_ms: int = 0
    rationale: Optional[str] = None
    error: Optional[str] = None

    def __post_init__(self):
        if not self.solver_id or not self.method_id:
            raise ValueError("solver_id and method_id must be non-empty")
        if self.elapsed_ms < 0:
            raise ValueError("elapsed_ms must be >= 0")
        if self.answer is None and self.error is None:
            raise ValueError("a candidate needs an answer or an error cause")

    @property
    def is_error(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    """Outcome of verifying one candidate.

    ``pass`` requires a non-empty check list with every check passing;
    ``error`` carries the failure cause (timeout, crash, malformed
    output, unverifiable) in ``detail``.
    """

    status: str
    checks: tuple[Check, ...] = ()
    detail: str = ""

    def __post_init__(self):
        if self.status not in ("pass", "fail", "error"):
            raise ValueError(f"unknown verdict status {self.status!r}")
        all_ok = bool(self.checks) and all(c.passed for c in self.checks)
        if self.status == "pass" and not all_ok:
            raise ValueError("pass verdict requires non-empty, all-passing checks")
        if self.status == "fail" and all_ok:
            raise ValueError("fail verdict contradicts all-passing checks")
        if self.status == "error" and not self.detail:
            raise ValueError("error verdict must name its cause in detail")

    @classmethod
    def passed(cls, checks: list[Check]) -> "Verdict":
        return cls("pass", tuple(checks))

    @classmethod
    def failed(cls, checks: list[Check], detail: str = "") -> "Verdict":
        return cls("fail", tuple(checks), detail)

    @classmethod
    def errored(cls, cause: str, checks: list[Check] = ()) -> "Verdict":
        return cls("error", tuple(checks), cause)

    @property
    def is_pass(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class SolverBinding:
    """Declarative reference to a solver; resolved by the adapters module."""

    id: str
    kind: str  # scripted | http-model | composite
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise ValueError("solver id must be non-empty")
        if self.kind not in ("scripted", "http-model", "composite"):
            raise ValueError(f"unknown solver kind {self.kind!r}")
