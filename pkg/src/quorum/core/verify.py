"""Candidate verification.

``verify`` is pure and deterministic: for a given (task, candidate) pair
it always returns the same verdict.  Tasks either carry a registered
verifier binding (puzzle train-pair execution, exact game values) or a
reference answer compared after normalization.  Tasks with neither are
unverifiable and yield an error verdict rather than a guess.
"""

from __future__ import annotations

import time
from typing import Callable

from ..errors import IntractableError, MalformedAnswerError, QuorumError
from .answers import AnswerValue, normalize_answer
from .model import Candidate, Check, Task, Verdict

DEFAULT_TIMEOUT_S = 10.0

# kind -> (accepted answer kinds, check function)
_VERIFIERS: dict[str, tuple[frozenset, Callable]] = {}


def register_verifier(kind: str, accepts: set[str], fn: Callable[[Task, Candidate, float], Verdict]):
    _VERIFIERS[kind] = (frozenset(accepts), fn)


def verifier_accepts(kind: str, answer_kind: str) -> bool:
    entry = _VERIFIERS.get(kind)
    return entry is not None and answer_kind in entry[0]


def verify(task: Task, candidate: Candidate, timeout_s: float = DEFAULT_TIMEOUT_S) -> Verdict:
    """Check one candidate against its task.

    Pass iff the bound verifier accepts the candidate, or (with no
    verifier) the normalized answer equals the normalized reference.
    """
    if candidate.is_error:
        return Verdict.errored(f"candidate error: {candidate.error}")
    if task.verifier is not None:
        entry = _VERIFIERS.get(task.verifier.kind)
        if entry is None:
            return Verdict.errored(f"unknown verifier kind {task.verifier.kind!r}")
        try:
            return entry[1](task, candidate, timeout_s)
        except TimeoutError:
            return Verdict.errored("timeout")
        except IntractableError as exc:
            return Verdict.errored(f"verifier intractable: {exc}")
        except QuorumError as exc:
            return Verdict.errored(f"verifier error: {exc}")
    if task.reference is not None:
        return _check_reference(task.reference, candidate)
    return Verdict.errored("unverifiable: task has no verifier and no reference answer")


def _check_reference(reference: AnswerValue, candidate: Candidate) -> Verdict:
    got = candidate.answer
    if got is None:
        return Verdict.errored("candidate has no answer")
    if got.kind != reference.kind:
        try:
            got = normalize_answer(got.canonical_text(), reference.kind)
        except MalformedAnswerError as exc:
            return Verdict.errored(f"malformed output: {exc}")
    ok = got == reference
    check = Check(
        "reference-equality",
        ok,
        f"expected {reference.canonical_text()!r}, got {got.canonical_text()!r}",
    )
    return Verdict.passed([check]) if ok else Verdict.failed([check])


def _verify_arc_program(task: Task, candidate: Candidate, timeout_s: float) -> Verdict:
    from ..arc.dsl import parse_dsl
    from ..arc.programs import verify_program
    from ..arc.task import ArcTask
    from ..errors import DslSyntaxError

    puzzle = ArcTask.from_dict(task.verifier.params["task"], task.verifier.params.get("id", task.id))
    if candidate.answer is None or candidate.answer.kind != "text":
        return Verdict.errored("malformed output: puzzle verifier expects program text")
    try:
        program = parse_dsl(candidate.answer.payload)
    except DslSyntaxError as exc:
        return Verdict.errored(f"malformed output: {exc}")
    return verify_program(program, puzzle, timeout_s=timeout_s)


def _verify_game_answer(task: Task, candidate: Candidate, timeout_s: float) -> Verdict:
    from ..games import exact_value

    params = dict(task.verifier.params)
    name = params.pop("game")
    deadline = time.monotonic() + timeout_s
    value = exact_value(name, **params)
    if time.monotonic() > deadline:
        raise TimeoutError
    reference = normalize_answer(str(value), task.answer_kind)
    return _check_reference(reference, candidate)


register_verifier("arc_program", {"text"}, _verify_arc_program)
register_verifier("game_answer", {"integer", "text"}, _verify_game_answer)
