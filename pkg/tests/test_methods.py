"""Inference combinators: exact examples and statistical oracles.

Heavyweight 10,000-trial checks live in test_acceptance; these tests
use the same oracles at smaller n with wider margins, plus the exact
small cases.
"""

import math
from fractions import Fraction

import pytest

from quorum.adapters import ScriptedSolver, TransformSolver
from quorum.core import Task, normalize_answer, verify
from quorum.errors import ConfigurationError
from quorum.methods import (
    best_of_n,
    consensus,
    leap,
    mcts_resample,
    mixture_of_agents,
    modal_answer,
    plan_search,
    prover_verifier,
    round_trip,
    self_consistency,
    zero_shot,
)
from quorum.seeds import derive_seed


def _task(task_id="t", kind="choice", reference=None, prompt="pick"):
    ref = None if reference is None else normalize_answer(reference, kind)
    return Task(id=task_id, category="test", prompt=prompt, answer_kind=kind, reference=ref)


class SeqSolver:
    """Answers by slot: seed derive(root, i) -> answers[i]."""

    deterministic_timing = True

    def __init__(self, answers, root=0, id="seq"):
        self.id = id
        self.map = {derive_seed(root, i): a for i, a in enumerate(answers)}

    def solve(self, task_id, prompt, seed):
        return self.map[seed]


def _yes_no_solver(p, rng_seed=0, id="s"):
    return ScriptedSolver(id, {"*": [("yes", p), ("no", 1 - p)]}, rng_seed=rng_seed)


YES_TASK = _task(kind="text", reference="yes")


class TestZeroShot:
    def test_certain_table(self):
        result = zero_shot(ScriptedSolver("s", {"*": [("A", 1.0)]}), _task(), seed=0)
        assert result.candidate.answer.payload == "A"

    def test_seed_determinism(self):
        solver = ScriptedSolver("s", {"*": [("A", 0.5), ("B", 0.5)]})
        a = zero_shot(solver, _task(), seed=9).candidate
        b = zero_shot(solver, _task(), seed=9).candidate
        assert a == b

    def test_fixture_baseline_one_of_nine(self):
        # Scripted to the recorded zero-shot column of the bundled
        # olympiad fixture: exactly one of the nine tasks verifies.
        from quorum.fixtures import load_fixture

        data = load_fixture("olympiad_methods")
        solved = 0
        for entry in data["tasks"]:
            task = _task(task_id=entry["id"], kind="text", reference="right")
            recorded = data["zero_shot_baseline"][entry["id"]]["solved"]
            solver = ScriptedSolver("o1-like", {entry["id"]: [("right" if recorded else "wrong", 1.0)]})
            result = zero_shot(solver, task, seed=0)
            solved += verify(task, result.candidate).is_pass
        assert solved == 1


class TestBestOfN:
    def test_n1_reduces_to_zero_shot(self):
        solver = ScriptedSolver("s", {"*": [("yes", 0.5), ("no", 0.5)]})
        for seed in range(10):
            bon = best_of_n(solver, verify, YES_TASK, n=1, seed=seed)
            zs = zero_shot(solver, YES_TASK, seed=seed)
            assert bon.candidate.answer == zs.candidate.answer

    def test_rejection_law(self):
        solver = _yes_no_solver(0.5, rng_seed=11)
        trials, hits = 2000, 0
        for trial in range(trials):
            result = best_of_n(solver, verify, YES_TASK, n=3, seed=trial)
            hits += verify(YES_TASK, result.candidate).is_pass
        assert abs(hits / trials - (1 - 0.5**3)) < 0.03

    def test_never_skips_a_verified_sample(self):
        solver = _yes_no_solver(0.2, rng_seed=5)
        for seed in range(300):
            result = best_of_n(solver, verify, YES_TASK, n=4, seed=seed)
            sampled_yes = any(e["answer"] == "yes" for e in result.trace.samples)
            if sampled_yes:
                assert result.candidate.answer.payload == "yes"
                assert result.trace.extras["selection"] == "first-verified"

    def test_no_verifier_warns_and_votes(self):
        solver = SeqSolver(["A", "B", "B"])
        result = best_of_n(solver, None, _task(), n=3, seed=0)
        assert result.candidate.answer.payload == "B"
        assert any("no verifier" in note for note in result.trace.notes)

    def test_trace_records_all_samples(self):
        solver = _yes_no_solver(0.5)
        result = best_of_n(solver, verify, YES_TASK, n=8, seed=1)
        assert len(result.trace.samples) == 8
        assert all("verdict" in e for e in result.trace.samples)


class TestSelfConsistency:
    def test_majority(self):
        result = self_consistency(SeqSolver(["A", "A", "B"]), _task(), n=3, seed=0)
        assert result.candidate.answer.payload == "A"

    def test_tie_breaks_lexicographically(self):
        for answers in (["A", "B"], ["B", "A"]):
            result = self_consistency(SeqSolver(answers), _task(), n=2, seed=0)
            assert result.candidate.answer.payload == "A"

    def test_majority_accuracy_binomial(self):
        solver = _yes_no_solver(0.6, rng_seed=2)
        trials, hits = 2000, 0
        for trial in range(trials):
            result = self_consistency(solver, YES_TASK, n=5, seed=trial)
            hits += result.candidate.answer.payload == "yes"
        expected = sum(math.comb(5, k) * 0.6**k * 0.4 ** (5 - k) for k in range(3, 6))
        assert abs(hits / trials - expected) < 0.03

    def test_all_errors(self):
        solver = ScriptedSolver("s", {"*": [("!error", 1.0)]})
        result = self_consistency(solver, _task(), n=3, seed=0)
        assert result.candidate.is_error

    def test_beats_zero_shot_above_coin_flip(self):
        # Majority voting amplifies any per-sample accuracy above 1/2.
        solver = _yes_no_solver(0.6, rng_seed=17)
        trials = 10_000
        sc_hits = zs_hits = 0
        for trial in range(trials):
            sc_hits += self_consistency(solver, YES_TASK, n=5, seed=trial).candidate.answer.payload == "yes"
            zs_hits += zero_shot(solver, YES_TASK, seed=trial).candidate.answer.payload == "yes"
        assert sc_hits / trials >= zs_hits / trials

    def test_order_independence_of_modal(self):
        answers = [normalize_answer(a, "choice") for a in "ABABCBBA"]
        baseline = modal_answer(answers)
        for shift in range(len(answers)):
            assert modal_answer(answers[shift:] + answers[:shift]) == baseline


class TestMixtureOfAgents:
    def test_single_solver(self):
        solver = ScriptedSolver("s", {"*": [("C", 1.0)]})
        result = mixture_of_agents([solver], [1.0], _task(), seed=0)
        assert result.candidate.answer.payload == "C"

    def test_weighted_argmax(self):
        a = ScriptedSolver("a", {"*": [("A", 1.0)]})
        b = ScriptedSolver("b", {"*": [("B", 1.0)]})
        result = mixture_of_agents([a, b], [0.6, 0.4], _task(), seed=0)
        assert result.candidate.answer.payload == "A"
        result = mixture_of_agents([a, b], [0.4, 0.6], _task(), seed=0)
        assert result.candidate.answer.payload == "B"

    def test_uniform_equals_pooled_majority(self):
        solvers = [
            ScriptedSolver("a", {"*": [("A", 1.0)]}),
            ScriptedSolver("b", {"*": [("A", 1.0)]}),
            ScriptedSolver("c", {"*": [("B", 1.0)]}),
        ]
        result = mixture_of_agents(solvers, None, _task(), seed=0)
        pooled = modal_answer([normalize_answer(e["answer"], "choice") for e in result.trace.samples])
        assert result.candidate.answer == pooled
        assert result.candidate.answer.payload == "A"

    def test_weight_mismatch_rejected(self):
        solver = ScriptedSolver("a", {"*": [("A", 1.0)]})
        with pytest.raises(ConfigurationError):
            mixture_of_agents([solver], [0.5, 0.5], _task(), seed=0)


class TestMctsResample:
    TWO_STAGE = {
        "*": [
            ("P1", 0.5, [("yes", 0.9), ("no", 0.1)]),
            ("P2", 0.5, [("yes", 0.1), ("no", 0.9)]),
        ]
    }

    def test_rollouts_1_reduces_to_zero_shot(self):
        solver = ScriptedSolver("s", {"*": [("yes", 0.5), ("no", 0.5)]}, two_stage=self.TWO_STAGE)
        for seed in range(10):
            a = mcts_resample(solver, verify, YES_TASK, rollouts=1, seed=seed).candidate
            b = zero_shot(solver, YES_TASK, seed=seed).candidate
            assert a.answer == b.answer

    def test_good_prefix_wins(self):
        solver = ScriptedSolver("s", {"*": [("yes", 0.5), ("no", 0.5)]},
                                rng_seed=4, two_stage=self.TWO_STAGE)
        trials = 1000
        chose_good = 0
        for trial in range(trials):
            result = mcts_resample(solver, verify, YES_TASK, rollouts=16, seed=trial)
            chose_good += result.trace.extras["chosen_prefix"] == "P1"
        assert chose_good / trials >= 0.95

    def test_prefix_value_is_mean_of_rewards(self):
        solver = ScriptedSolver("s", {"*": [("yes", 0.5), ("no", 0.5)]}, two_stage=self.TWO_STAGE)
        result = mcts_resample(solver, verify, YES_TASK, rollouts=9, seed=3)
        for entry in result.trace.extras["prefix_values"]:
            assert entry["value"] == pytest.approx(sum(entry["rewards"]) / entry["visits"])

    def test_no_verifier_uses_modal_agreement(self):
        solver = ScriptedSolver("s", {"*": [("yes", 0.5), ("no", 0.5)]}, two_stage=self.TWO_STAGE)
        result = mcts_resample(solver, None, YES_TASK, rollouts=9, seed=3)
        assert any("modal completion" in note for note in result.trace.notes)


ROT13 = str.maketrans(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ",
    "nopqrstuvwxyzabcdefghijklmNOPQRSTUVWXYZABCDEFGHIJKLM",
)


class TestRoundTrip:
    def test_identity_accepted(self):
        solver = TransformSolver("id", lambda p, rng: p.removeprefix("FWD:").removeprefix("BWD:"))
        task = _task(kind="text", prompt="some text")
        result = round_trip(solver, "FWD:{input}", "BWD:{output}", task, seed=0)
        assert result.trace.extras.get("accepted_attempt") == 0

    def test_rot13_involution_accepted(self):
        solver = TransformSolver(
            "rot13", lambda p, rng: p.removeprefix("FWD:").removeprefix("BWD:").translate(ROT13)
        )
        task = _task(kind="text", prompt="hello world")
        result = round_trip(solver, "FWD:{input}", "BWD:{output}", task, seed=0)
        assert result.trace.extras.get("accepted_attempt") == 0
        assert result.candidate.answer.payload == "uryyb jbeyq"

    def test_noisy_backward_retry_law(self):
        def noisy(prompt, rng):
            if prompt.startswith("FWD:"):
                return prompt[4:]
            text = prompt[4:]
            return text + " corrupted" if rng.random() < 0.1 else text

        task = _task(kind="text", prompt="stable text")
        trials, accepted = 2000, 0
        for trial in range(trials):
            solver = TransformSolver("noisy", noisy, rng_seed=trial)
            result = round_trip(solver, "FWD:{input}", "BWD:{output}", task, seed=trial, n=5)
            accepted += "accepted_attempt" in result.trace.extras
        assert abs(accepted / trials - (1 - 0.1**5)) < 0.02

    def test_failure_flagged(self):
        solver = TransformSolver("bad", lambda p, rng: p.removeprefix("FWD:") + "x"
                                 if p.startswith("BWD:") else p.removeprefix("FWD:"))
        task = _task(kind="text", prompt="text")
        result = round_trip(solver, "FWD:{input}", "BWD:{output}", task, seed=0, n=2)
        assert result.trace.extras.get("round_trip_failed")
        assert "round_trip_failed" in result.trace.notes


class TestProverVerifier:
    def test_always_accepting_verifier(self):
        prover = ScriptedSolver("p", {"*": [("yes", 0.5), ("no", 0.5)]})
        judge = TransformSolver("ok", lambda p, rng: "1")
        result = prover_verifier(prover, judge, YES_TASK, rounds=3, seed=0)
        assert result.trace.extras["accepted_round"] == 0

    def test_reference_only_verifier_law(self):
        def strict(prompt, rng):
            last = prompt.strip().splitlines()[-1]
            return "1" if last.endswith("yes") else "0"

        judge = TransformSolver("strict", strict)
        trials, accepted = 2000, 0
        for trial in range(trials):
            prover = _yes_no_solver(0.5, rng_seed=trial, id="p")
            result = prover_verifier(prover, judge, YES_TASK, rounds=4, seed=trial)
            accepted += "accepted_round" in result.trace.extras
        assert abs(accepted / trials - (1 - 0.5**4)) < 0.03

    def test_transcript_contract(self):
        prover = ScriptedSolver("p", {"*": [("no", 1.0)]})
        judge = TransformSolver("never", lambda p, rng: "0")
        result = prover_verifier(prover, judge, YES_TASK, rounds=4, seed=0)
        transcript = result.trace.extras["transcript"]
        assert len(transcript) <= 4
        rounds = [t["round"] for t in transcript]
        assert rounds == sorted(rounds) and len(set(rounds)) == len(rounds)
        assert any("no attempt accepted" in n for n in result.trace.notes)

    def test_judge_errors_count_as_rejection(self):
        prover = ScriptedSolver("p", {"*": [("yes", 1.0)]})
        judge = ScriptedSolver("broken", {"*": [("!error", 1.0)]})
        result = prover_verifier(prover, judge, YES_TASK, rounds=2, seed=0)
        assert "accepted_round" not in result.trace.extras


class TestPlanSearch:
    def test_single_plan_single_solve(self):
        solver = ScriptedSolver("s", {"*": [("A", 1.0)]})
        result = plan_search(solver, _task(), n_plans=1, seed=0)
        assert len(result.trace.samples) == 1

    def test_ignored_plans_equal_pooled_majority(self):
        solver = ScriptedSolver("s", {"*": [("A", 0.5), ("B", 0.5)]}, rng_seed=8)
        for seed in range(20):
            result = plan_search(solver, _task(), n_plans=5, seed=seed)
            answers = [normalize_answer(e["answer"], "choice") for e in result.trace.samples]
            assert result.candidate.answer == modal_answer(answers)

    def test_one_good_plan_in_four(self):
        trials, hits = 2000, 0
        for trial in range(trials):
            solver = ScriptedSolver(
                "s",
                {"*": [("no", 1.0)]},
                rng_seed=trial,
                prompt_triggers={
                    "Draft a short solution plan": {"*": [("use the key fact", 0.25), ("flail", 0.75)]},
                    "use the key fact": {"*": [("yes", 1.0)]},
                },
            )
            result = plan_search(solver, YES_TASK, n_plans=4, seed=trial, verifier=verify)
            hits += verify(YES_TASK, result.candidate).is_pass
        assert abs(hits / trials - (1 - 0.75**4)) < 0.03


class TestLeap:
    def test_no_examples_equals_zero_shot(self):
        solver = ScriptedSolver("s", {"*": [("A", 0.5), ("B", 0.5)]})
        for seed in range(10):
            a = leap(solver, [], _task(), seed=seed).candidate
            b = zero_shot(solver, _task(), seed=seed).candidate
            assert a.answer == b.answer

    def test_principles_flip_the_answer(self):
        # Solver answers correctly only when the prompt carries a principle.
        solver = ScriptedSolver(
            "s",
            {"*": [("wrong", 1.0)]},
            prompt_triggers={
                "List one principle per line": {"*": [("always check parity first", 1.0)]},
                "Principles:": {"*": [("yes", 1.0)]},
            },
        )
        task = _task(kind="text", reference="yes")
        assert not verify(task, zero_shot(solver, task, seed=0).candidate).is_pass
        result = leap(solver, [("2+2", "4")], task, seed=0)
        assert verify(task, result.candidate).is_pass

    def test_principles_verbatim_in_trace(self):
        solver = ScriptedSolver(
            "s",
            {"*": [("A", 1.0)]},
            prompt_triggers={"List one principle per line": {"*": [("- rule one\n- rule two", 1.0)]}},
        )
        result = leap(solver, [("x", "y")], _task(), seed=0)
        assert result.trace.extras["principles"] == ["rule one", "rule two"]

    def test_empty_extraction_falls_back(self):
        solver = ScriptedSolver(
            "s",
            {"*": [("A", 1.0)]},
            prompt_triggers={"List one principle per line": {"*": [("   \n  ", 1.0)]}},
        )
        result = leap(solver, [("x", "y")], _task(), seed=0)
        assert any("falling back" in note for note in result.trace.notes)
        assert result.candidate.answer.payload == "A"


class TestConsensus:
    def _answers(self, letters):
        return [normalize_answer(ch, "choice") for ch in letters]

    def test_unanimous(self):
        report = consensus(self._answers("AAAAA"))
        assert report.c == 1 and report.diversity == 0

    def test_two_thirds(self):
        report = consensus(self._answers("AAB"))
        assert report.c == Fraction(2, 3)
        assert report.diversity == Fraction(1, 3)

    def test_four_way_tie(self):
        report = consensus(self._answers("ABCD"))
        assert report.modal_answer.payload == "A"
        assert report.c == Fraction(1, 4)

    def test_diversity_complement_exact_and_integral(self):
        import random

        rng = random.Random(13)
        for _ in range(50):
            n = rng.randint(1, 12)
            letters = [rng.choice("ABC") for _ in range(n)]
            report = consensus(self._answers(letters))
            assert report.diversity == 1 - report.c
            assert (report.c * n).denominator == 1
            assert report.c >= Fraction(1, n)  # the modal answer agrees with itself
            # independent hand-count
            best = max("ABC", key=lambda ch: (letters.count(ch), -ord(ch)))
            assert report.c == Fraction(letters.count(best), n)

    def test_needs_candidates(self):
        with pytest.raises(ValueError):
            consensus([])
