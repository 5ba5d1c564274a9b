"""Solver protocol and the sampling wrapper.

A solver is anything with an ``id`` and ``solve(task_id, prompt, seed)
-> str``.  Solvers that support two-stage sampling (a rationale prefix
followed by a completion conditioned on it) additionally provide
``solve_prefix(task_id, prompt, seed) -> str``.
"""

from __future__ import annotations

import time
from typing import Optional, Protocol, runtime_checkable

from ..core.answers import normalize_answer
from ..core.model import Candidate, Task
from ..errors import MalformedAnswerError, QuorumError


class SolverError(QuorumError):
    """A solver failed to produce output (network, crash, refusal)."""


@runtime_checkable
class Solver(Protocol):
    id: str

    def solve(self, task_id: str, prompt: str, seed: int) -> str: ...


def supports_two_stage(solver) -> bool:
    return callable(getattr(solver, "solve_prefix", None))


def sample(
    solver,
    task: Task,
    seed: int,
    method_id: str = "sample",
    prompt: Optional[str] = None,
    rationale: Optional[str] = None,
) -> Candidate:
    """Draw one candidate from a solver.

    Solver failures and malformed outputs become error candidates, never
    exceptions; retry policy lives inside the individual solvers.
    """
    text = task.prompt if prompt is None else prompt
    start = time.monotonic()
    try:
        raw = solver.solve(task.id, text, seed)
    except SolverError as exc:
        return Candidate(
            answer=None,
            solver_id=solver.id,
            method_id=method_id,
            seed=seed,
            elapsed_ms=_elapsed_ms(solver, start),
            rationale=rationale,
            error=str(exc),
        )
    try:
        answer = normalize_answer(raw, task.answer_kind)
    except MalformedAnswerError as exc:
        return Candidate(
            answer=None,
            solver_id=solver.id,
            method_id=method_id,
            seed=seed,
            elapsed_ms=_elapsed_ms(solver, start),
            rationale=rationale,
            error=f"malformed output: {exc}",
        )
    return Candidate(
        answer=answer,
        solver_id=solver.id,
        method_id=method_id,
        seed=seed,
        elapsed_ms=_elapsed_ms(solver, start),
        rationale=rationale if rationale is not None else (raw if raw != answer.canonical_text() else None),
    )


def _elapsed_ms(solver, start: float) -> int:
    # Scripted solvers report zero so that fixed-seed runs serialize
    # byte-identically; wall time only means something for real backends.
    if getattr(solver, "deterministic_timing", False):
        return 0
    return max(0, int((time.monotonic() - start) * 1000))
