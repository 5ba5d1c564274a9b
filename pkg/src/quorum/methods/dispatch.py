"""Single entry point mapping a MethodConfig onto the method functions.

Used by the evaluation command so run configs can name any method
uniformly.  Method-specific knobs live in ``config.params``:

* ``rto``: ``forward_prompt`` / ``backward_prompt`` (templated with
  ``{input}`` / ``{output}``),
* ``leap``: ``examples`` as a list of ``[input, answer]`` pairs,
* ``mixture_of_agents``: consumes the extra solvers passed by the
  caller.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..core.model import Task
from ..errors import ConfigurationError
from . import combinators as m
from .config import MethodConfig


def run_method(
    config: MethodConfig,
    solver,
    task: Task,
    verifier=None,
    extra_solvers: Sequence = (),
    seed: Optional[int] = None,
) -> m.MethodResult:
    seed = config.seed if seed is None else seed
    mid = config.method_id
    if mid == "zero_shot":
        return m.zero_shot(solver, task, seed)
    if mid == "best_of_n":
        return m.best_of_n(solver, verifier, task, config.n, seed)
    if mid == "self_consistency":
        return m.self_consistency(solver, task, config.n, seed)
    if mid == "mixture_of_agents":
        solvers = [solver, *extra_solvers]
        weights = list(config.weights) if config.weights is not None else None
        return m.mixture_of_agents(solvers, weights, task, seed)
    if mid == "mcts":
        return m.mcts_resample(solver, verifier, task, config.n, seed)
    if mid == "rto":
        return m.round_trip(
            solver,
            config.params.get("forward_prompt", "{input}"),
            config.params.get("backward_prompt", "{output}"),
            task,
            seed,
            n=config.n,
        )
    if mid == "prover_verifier":
        verifier_model = config.params.get("verifier_solver")
        if verifier_model is None and extra_solvers:
            verifier_model = extra_solvers[0]
        if verifier_model is None:
            raise ConfigurationError("prover_verifier needs a verifier solver")
        return m.prover_verifier(solver, verifier_model, task, config.rounds, seed)
    if mid == "plan_search":
        return m.plan_search(solver, task, config.n, seed, verifier=verifier)
    if mid == "leap":
        examples = [tuple(pair) for pair in config.params.get("examples", [])]
        return m.leap(solver, examples, task, seed)
    raise ConfigurationError(f"unknown method {mid!r}")
