"""Inference strategies over black-box solvers.

Each method consumes solver samples (and optionally a verifier) and
emits one candidate plus a trace of everything it drew and decided.
Per-sample seeds are fixed per slot index, so every selection operator
is independent of the order in which samples complete.  Ties between
answers always break toward the lexicographically smallest normalized
payload.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..adapters.base import SolverError, sample, supports_two_stage
from ..core.answers import AnswerValue
from ..core.model import Candidate, Task, Verdict
from ..errors import ConfigurationError
from ..seeds import derive_seed
from .config import WEIGHT_TOL, ConsensusReport, Principles

VerifierFn = Callable[[Task, Candidate], Verdict]


@dataclass
class MethodTrace:
    method_id: str
    samples: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def record(self, slot, candidate: Candidate, verdict: Optional[Verdict] = None, **kw):
        entry = {
            "slot": slot,
            "seed": candidate.seed,
            "answer": candidate.answer.canonical_text() if candidate.answer else None,
            "error": candidate.error,
        }
        if verdict is not None:
            entry["verdict"] = verdict.status
        entry.update(kw)
        self.samples.append(entry)

    def to_json(self) -> dict:
        return {
            "method_id": self.method_id,
            "samples": self.samples,
            "notes": self.notes,
            "extras": self.extras,
        }


@dataclass
class MethodResult:
    candidate: Candidate
    trace: MethodTrace


def modal_answer(answers: Sequence[AnswerValue]) -> AnswerValue:
    """Most common answer; ties break to the smallest sort key."""
    if not answers:
        raise ValueError("no answers to vote over")
    counts = Counter(answers)
    return min(counts, key=lambda a: (-counts[a], a.sort_key()))


def consensus(candidates: Sequence) -> ConsensusReport:
    """Agreement fraction c = |{k : y_k = modal}| / n and its complement."""
    if not candidates:
        raise ValueError("consensus requires at least one candidate")
    answers = [c.answer if isinstance(c, Candidate) else c for c in candidates]
    present = [a for a in answers if a is not None]
    if not present:
        raise ValueError("consensus requires at least one non-error answer")
    modal = modal_answer(present)
    c = Fraction(sum(1 for a in answers if a == modal), len(answers))
    return ConsensusReport(modal, c, 1 - c)


def _aggregate_candidate(
    answer: Optional[AnswerValue],
    samples: Sequence[Candidate],
    solver_id: str,
    method_id: str,
    seed: int,
    error: Optional[str] = None,
) -> Candidate:
    return Candidate(
        answer=answer,
        solver_id=solver_id,
        method_id=method_id,
        seed=seed,
        elapsed_ms=sum(s.elapsed_ms for s in samples),
        error=error,
    )


def _select_modal(samples, trace, solver_id, method_id, seed):
    answered = [s for s in samples if s.answer is not None]
    if not answered:
        trace.notes.append("all samples failed")
        return _aggregate_candidate(None, samples, solver_id, method_id, seed, error="all samples failed")
    modal = modal_answer([s.answer for s in answered])
    trace.extras["selection"] = "modal"
    trace.extras["modal_answer"] = modal.canonical_text()
    return _aggregate_candidate(modal, samples, solver_id, method_id, seed)


# -- the methods -----------------------------------------------------------


def zero_shot(solver, task: Task, seed: int) -> MethodResult:
    """The task prompt, as-is, one sample."""
    trace = MethodTrace("zero_shot")
    cand = sample(solver, task, derive_seed(seed, 0), method_id="zero_shot")
    trace.record(0, cand)
    return MethodResult(cand, trace)


def best_of_n(
    solver,
    verifier: Optional[VerifierFn],
    task: Task,
    n: int,
    seed: int,
) -> MethodResult:
    """Rejection sampling: first verified candidate wins, else modal.

    With a verifier, candidates are checked in slot order and the first
    pass is returned; without one (or when nothing passes) selection
    falls back to the modal answer, with a recorded warning when the
    verifier was absent.
    """
    if n < 1:
        raise ConfigurationError("n must be >= 1")
    trace = MethodTrace("best_of_n")
    if verifier is None:
        trace.notes.append("no verifier: selecting by modal answer only")
    samples, first_pass = [], None
    for i in range(n):
        cand = sample(solver, task, derive_seed(seed, i), method_id="best_of_n")
        verdict = verifier(task, cand) if verifier is not None else None
        trace.record(i, cand, verdict)
        samples.append(cand)
        if verdict is not None and verdict.is_pass and first_pass is None:
            first_pass = cand
    if first_pass is not None:
        trace.extras["selection"] = "first-verified"
        return MethodResult(
            _aggregate_candidate(first_pass.answer, samples, solver.id, "best_of_n", seed), trace
        )
    return MethodResult(_select_modal(samples, trace, solver.id, "best_of_n", seed), trace)


def self_consistency(solver, task: Task, n: int, seed: int) -> MethodResult:
    """Majority vote over n independent samples."""
    if n < 1:
        raise ConfigurationError("n must be >= 1")
    trace = MethodTrace("self_consistency")
    samples = []
    for i in range(n):
        cand = sample(solver, task, derive_seed(seed, i), method_id="self_consistency")
        trace.record(i, cand)
        samples.append(cand)
    return MethodResult(_select_modal(samples, trace, solver.id, "self_consistency", seed), trace)


def mixture_of_agents(
    solvers: Sequence,
    weights: Optional[Sequence[float]],
    task: Task,
    seed: int,
) -> MethodResult:
    """Weighted vote over one sample per agent.

    Answer distributions of black-box solvers are not observable, so the
    mixture is realized as voting: each agent contributes its weight to
    its sampled answer and the argmax wins.
    """
    if not solvers:
        raise ConfigurationError("mixture needs at least one solver")
    if weights is None:
        weights = [1.0 / len(solvers)] * len(solvers)
    if len(weights) != len(solvers):
        raise ConfigurationError(f"{len(solvers)} solvers but {len(weights)} weights")
    if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > WEIGHT_TOL:
        raise ConfigurationError("weights must be non-negative and sum to 1")
    trace = MethodTrace("mixture_of_agents")
    samples, mass = [], {}
    for solver, weight in zip(solvers, weights):
        cand = sample(solver, task, derive_seed(seed, solver.id), method_id="mixture_of_agents")
        trace.record(solver.id, cand, weight=weight)
        samples.append(cand)
        if cand.answer is not None:
            mass[cand.answer] = mass.get(cand.answer, 0.0) + weight
    if not mass:
        return MethodResult(
            _aggregate_candidate(None, samples, samples[0].solver_id, "mixture_of_agents", seed,
                                 error="all agents failed"),
            trace,
        )
    best = min(mass, key=lambda a: (-mass[a], a.sort_key()))
    trace.extras["vote_mass"] = {a.canonical_text(): m for a, m in mass.items()}
    solver_ids = "+".join(s.id for s in solvers)
    return MethodResult(_aggregate_candidate(best, samples, solver_ids, "mixture_of_agents", seed), trace)


def mcts_resample(
    solver,
    verifier: Optional[VerifierFn],
    task: Task,
    rollouts: int,
    seed: int,
) -> MethodResult:
    """Rejection sampling from an intermediate step via Monte-Carlo rollouts.

    The rollout budget is spread over up to ceil(sqrt(rollouts)) distinct
    sampled rationale prefixes; each prefix is scored by the mean reward
    of its completions and the best completion under the best prefix is
    returned.  Reward is 1 for a verified completion; without a verifier
    it falls back to agreement with the modal completion (recorded).
    """
    if rollouts < 1:
        raise ConfigurationError("rollouts must be >= 1")
    trace = MethodTrace("mcts")
    if rollouts == 1:
        cand = sample(solver, task, derive_seed(seed, 0), method_id="mcts")
        trace.record(0, cand)
        trace.notes.append("rollouts=1: single plain sample")
        return MethodResult(cand, trace)
    if not supports_two_stage(solver):
        trace.notes.append("solver lacks two-stage sampling: rollouts are plain samples")
        prefixes = [""]
    else:
        k = math.isqrt(rollouts - 1) + 1  # ceil(sqrt(rollouts))
        prefixes = []
        for i in range(4 * k):
            if len(prefixes) >= k:
                break
            try:
                prefix = solver.solve_prefix(task.id, task.prompt, derive_seed(seed, "prefix", i))
            except SolverError as exc:
                trace.notes.append(f"prefix draw failed: {exc}")
                continue
            if prefix not in prefixes:
                prefixes.append(prefix)
        if not prefixes:
            prefixes = [""]

    per_prefix = max(1, rollouts // len(prefixes))
    completions: dict[str, list[Candidate]] = {p: [] for p in prefixes}
    for pi, prefix in enumerate(prefixes):
        for j in range(per_prefix):
            slot_seed = derive_seed(seed, "completion", pi, j)
            if prefix and hasattr(solver, "solve_completion"):
                try:
                    raw = solver.solve_completion(task.id, task.prompt, prefix, slot_seed)
                    cand = sample(_FixedOutput(solver.id, raw), task, slot_seed,
                                  method_id="mcts", rationale=prefix)
                except SolverError as exc:
                    cand = Candidate(answer=None, solver_id=solver.id, method_id="mcts",
                                     seed=slot_seed, error=str(exc))
            else:
                prompt = f"{task.prompt}\n{prefix}" if prefix else None
                cand = sample(solver, task, slot_seed, method_id="mcts", prompt=prompt, rationale=prefix or None)
            completions[prefix].append(cand)

    rewards: dict[str, list[float]] = {}
    if verifier is not None:
        for prefix, cands in completions.items():
            rewards[prefix] = [1.0 if verifier(task, cand).is_pass else 0.0 for cand in cands]
    else:
        trace.notes.append("no verifier: reward is agreement with the modal completion")
        pool = [c.answer for cs in completions.values() for c in cs if c.answer is not None]
        modal = modal_answer(pool) if pool else None
        for prefix, cands in completions.items():
            rewards[prefix] = [1.0 if (c.answer is not None and c.answer == modal) else 0.0 for c in cands]

    values = {p: (sum(rs) / len(rs) if rs else 0.0) for p, rs in rewards.items()}
    trace.extras["prefix_values"] = [
        {"prefix": p, "visits": len(rewards[p]), "rewards": rewards[p], "value": values[p]}
        for p in prefixes
    ]
    best_prefix = prefixes[min(range(len(prefixes)), key=lambda i: (-values[prefixes[i]], i))]
    trace.extras["chosen_prefix"] = best_prefix

    for pi, prefix in enumerate(prefixes):
        for j, cand in enumerate(completions[prefix]):
            trace.record((pi, j), cand, prefix=prefix, reward=rewards[prefix][j])

    best_cands = completions[best_prefix]
    ranked = sorted(
        range(len(best_cands)),
        key=lambda j: (
            -rewards[best_prefix][j],
            best_cands[j].answer.sort_key() if best_cands[j].answer else ("~", "~"),
            j,
        ),
    )
    winner = best_cands[ranked[0]]
    all_samples = [c for cs in completions.values() for c in cs]
    if winner.answer is None:
        answered = [c.answer for c in all_samples if c.answer is not None]
        if not answered:
            return MethodResult(
                _aggregate_candidate(None, all_samples, solver.id, "mcts", seed,
                                     error="all rollouts failed"),
                trace,
            )
        trace.notes.append("chosen prefix produced no answer: falling back to modal completion")
        return MethodResult(
            _aggregate_candidate(modal_answer(answered), all_samples, solver.id, "mcts", seed), trace
        )
    return MethodResult(_aggregate_candidate(winner.answer, all_samples, solver.id, "mcts", seed), trace)


class _FixedOutput:
    """Wrap precomputed text so ``sample`` can normalize and time it."""

    deterministic_timing = True

    def __init__(self, id: str, text: str):
        self.id = id
        self.text = text

    def solve(self, task_id: str, prompt: str, seed: int) -> str:
        return self.text


def round_trip(
    solver,
    forward_prompt: str,
    backward_prompt: str,
    task: Task,
    seed: int,
    n: int = 1,
    equivalent: Optional[Callable[[str, str], bool]] = None,
    judge=None,
) -> MethodResult:
    """Accept a candidate only if the reverse action restores the input.

    ``forward_prompt`` must contain ``{input}``; ``backward_prompt`` must
    contain ``{output}``.  Equivalence defaults to normalized-text
    equality; pass ``judge`` (a solver answering yes/no) for a model
    judgment instead.
    """
    if "{input}" not in forward_prompt or "{output}" not in backward_prompt:
        raise ConfigurationError("forward prompt needs {input} and backward prompt needs {output}")
    trace = MethodTrace("rto")
    check = equivalent or (_judge_equivalence(judge, task, seed) if judge else _text_equal)
    last = None
    for i in range(max(1, n)):
        fwd_seed = derive_seed(seed, "forward", i)
        bwd_seed = derive_seed(seed, "backward", i)
        try:
            forward_out = solver.solve(task.id, forward_prompt.format(input=task.prompt), fwd_seed)
            backward_out = solver.solve(task.id, backward_prompt.format(output=forward_out), bwd_seed)
        except SolverError as exc:
            trace.record(i, Candidate(answer=None, solver_id=solver.id, method_id="rto",
                                      seed=fwd_seed, error=str(exc)))
            continue
        cand = sample(_FixedOutput(solver.id, forward_out), task, fwd_seed,
                      method_id="rto", rationale=f"round trip returned {backward_out!r}")
        accepted = cand.answer is not None and check(task.prompt, backward_out)
        trace.record(i, cand, accepted=accepted, backward=backward_out)
        last = cand
        if accepted:
            trace.extras["accepted_attempt"] = i
            return MethodResult(cand, trace)
    trace.notes.append("round_trip_failed")
    trace.extras["round_trip_failed"] = True
    if last is None:
        last = Candidate(answer=None, solver_id=solver.id, method_id="rto",
                         seed=seed, error="round trip produced no candidate")
    return MethodResult(last, trace)


def _text_equal(a: str, b: str) -> bool:
    from ..core.answers import normalize_answer

    return normalize_answer(a, "text") == normalize_answer(b, "text")


def _judge_equivalence(judge, task: Task, seed: int):
    def check(a: str, b: str) -> bool:
        prompt = f"Are these equivalent? Reply yes or no.\nfirst: {a}\nsecond: {b}"
        try:
            reply = judge.solve(task.id, prompt, derive_seed(seed, "judge"))
        except SolverError:
            return False
        return _parse_decision(reply)

    return check


def _parse_decision(text: str) -> bool:
    head = text.strip().split()[0].lower() if text.strip() else ""
    return head in ("1", "yes", "accept", "true", "correct")


def prover_verifier(
    prover,
    verifier_model,
    task: Task,
    rounds: int,
    seed: int,
) -> MethodResult:
    """Interactive game: the prover proposes, the verifier model accepts or rejects.

    Returns the first accepted attempt; after ``rounds`` rejections the
    last attempt is returned flagged unaccepted.  Verifier-model failures
    count as rejections.
    """
    if rounds < 1:
        raise ConfigurationError("rounds must be >= 1")
    trace = MethodTrace("prover_verifier")
    transcript: list[dict] = []
    last = None
    for i in range(rounds):
        attempt = sample(prover, task, derive_seed(seed, "attempt", i), method_id="prover_verifier")
        shown = attempt.answer.canonical_text() if attempt.answer else f"<error: {attempt.error}>"
        transcript.append({"round": i, "message": shown})
        decision_prompt = "Decide whether the latest attempt is correct. Reply 1 or 0.\n" + "\n".join(
            f"attempt {t['round']}: {t['message']}" for t in transcript
        )
        try:
            decision = _parse_decision(
                verifier_model.solve(task.id, decision_prompt, derive_seed(seed, "decision", i))
            )
        except SolverError as exc:
            decision = False
            trace.notes.append(f"verifier model error on round {i}: {exc}")
        transcript[-1]["decision"] = int(decision)
        trace.record(i, attempt, decision=int(decision))
        last = attempt
        if decision and attempt.answer is not None:
            trace.extras["transcript"] = transcript
            trace.extras["accepted_round"] = i
            return MethodResult(attempt, trace)
    trace.extras["transcript"] = transcript
    trace.notes.append("no attempt accepted")
    if last is None or last.answer is None:
        last = Candidate(answer=None, solver_id=prover.id, method_id="prover_verifier",
                         seed=seed, error="no attempt produced an answer")
    return MethodResult(last, trace)


def plan_search(
    solver,
    task: Task,
    n_plans: int,
    seed: int,
    verifier: Optional[VerifierFn] = None,
) -> MethodResult:
    """Explore candidate plans, solve once conditioned on each, select."""
    if n_plans < 1:
        raise ConfigurationError("n_plans must be >= 1")
    trace = MethodTrace("plan_search")
    samples, first_pass = [], None
    for i in range(n_plans):
        try:
            plan = solver.solve(task.id, f"Draft a short solution plan.\n{task.prompt}",
                                derive_seed(seed, "plan", i))
        except SolverError as exc:
            trace.notes.append(f"plan draw {i} failed: {exc}")
            plan = ""
        prompt = f"{task.prompt}\n\nPlan:\n{plan}" if plan else None
        cand = sample(solver, task, derive_seed(seed, i), method_id="plan_search",
                      prompt=prompt, rationale=plan or None)
        verdict = verifier(task, cand) if verifier is not None else None
        trace.record(i, cand, verdict, plan=plan)
        samples.append(cand)
        if verdict is not None and verdict.is_pass and first_pass is None:
            first_pass = cand
    if first_pass is not None:
        trace.extras["selection"] = "first-verified"
        return MethodResult(
            _aggregate_candidate(first_pass.answer, samples, solver.id, "plan_search", seed), trace
        )
    return MethodResult(_select_modal(samples, trace, solver.id, "plan_search", seed), trace)


PRINCIPLE_PROMPT = (
    "Derive general principles for solving problems like these examples.\n"
    "{examples}\n"
    "List one principle per line."
)


def leap(
    solver,
    examples: Sequence[tuple[str, str]],
    task: Task,
    seed: int,
) -> MethodResult:
    """Learn principles from worked examples, then solve with them prepended.

    With no examples, or when principle extraction comes back empty, the
    method degrades to a plain zero-shot sample with a recorded warning.
    """
    trace = MethodTrace("leap")
    principles = None
    if examples:
        rendered = "\n".join(
            f"example {i} input: {x}\nexample {i} answer: {y}" for i, (x, y) in enumerate(examples, 1)
        )
        try:
            raw = solver.solve(task.id, PRINCIPLE_PROMPT.format(examples=rendered),
                               derive_seed(seed, "principles"))
        except SolverError as exc:
            trace.notes.append(f"principle extraction failed: {exc}")
            raw = ""
        items = tuple(line.strip(" -*0123456789.").strip() for line in raw.splitlines())
        items = tuple(item for item in items if item)
        if items:
            principles = Principles(items, tuple((x, y) for x, y in examples))
            trace.extras["principles"] = list(items)
        else:
            trace.notes.append("empty principle extraction: falling back to zero-shot")
    else:
        trace.notes.append("no examples given: falling back to zero-shot")

    prompt = f"Principles:\n{principles.render()}\n\n{task.prompt}" if principles else None
    cand = sample(solver, task, derive_seed(seed, 0), method_id="leap", prompt=prompt)
    trace.record(0, cand)
    return MethodResult(cand, trace)
