"""Operation registry for pipeline nodes.

Each operation declares its input and output ports and a function
``fn(params, inputs, ctx) -> dict of outputs``.  The execution context
carries the solver registry, the root seed, and the verification hook,
so nodes stay declarative and serializable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..errors import ConfigurationError, QuorumError
from ..seeds import derive_seed


@dataclass
class ExecutionContext:
    solvers: dict = field(default_factory=dict)
    seed: int = 0
    tasks: dict = field(default_factory=dict)  # core Task objects by id, for verification

    def solver(self, solver_id: str):
        if solver_id not in self.solvers:
            raise ConfigurationError(f"no solver {solver_id!r} in execution context")
        return self.solvers[solver_id]


@dataclass(frozen=True)
class OpDef:
    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    fn: Callable


_REGISTRY: dict[str, OpDef] = {}


def register_op(name: str, inputs: tuple[str, ...], outputs: tuple[str, ...]):
    def wrap(fn):
        _REGISTRY[name] = OpDef(name, inputs, outputs, fn)
        return fn

    return wrap


def op_def(name: str) -> OpDef:
    from .model import GraphValidationError

    if name not in _REGISTRY:
        raise GraphValidationError(f"unknown operation {name!r}")
    return _REGISTRY[name]


def known_ops() -> list[str]:
    return sorted(_REGISTRY)


@register_op("const", (), ("value",))
def _const(params, inputs, ctx, node_id):
    return {"value": params.get("value")}


@register_op("passthrough", ("value",), ("value",))
def _passthrough(params, inputs, ctx, node_id):
    return {"value": inputs["value"]}


@register_op("join", ("a", "b"), ("value",))
def _join(params, inputs, ctx, node_id):
    sep = params.get("sep", "\n")
    return {"value": f"{inputs['a']}{sep}{inputs['b']}"}


@register_op("stub", (), ("value",))
def _stub(params, inputs, ctx, node_id):
    # Placeholder for stages that need tooling this package does not
    # ship (e.g. formal-proof compilation); emits a fixed marker value.
    return {"value": params.get("value", "stub")}


@register_op("fail", ("value",), ("value",))
def _fail(params, inputs, ctx, node_id):
    raise QuorumError(params.get("message", "node configured to fail"))


@register_op("puzzle_prompt", ("task",), ("prompt",))
def _puzzle_prompt(params, inputs, ctx, node_id):
    from ..arc.prompts import format_prompt
    from ..arc.task import ArcTask

    task = inputs["task"]
    if isinstance(task, dict):
        task = ArcTask.from_dict(task, task.get("id", "task"))
    return {"prompt": format_prompt(task, params.get("style", "labeled"))}


@register_op("solve_text", ("prompt",), ("text",))
def _solve_text(params, inputs, ctx, node_id):
    solver = ctx.solver(params["solver_id"])
    seed = derive_seed(ctx.seed, node_id)
    return {"text": solver.solve(params.get("task_id", node_id), inputs["prompt"], seed)}


@register_op("puzzle_verify", ("program_text", "task"), ("verdict", "passed"))
def _puzzle_verify(params, inputs, ctx, node_id):
    from ..arc.dsl import parse_dsl
    from ..arc.programs import verify_program
    from ..arc.task import ArcTask
    from ..core.runstore import verdict_to_json
    from ..errors import DslSyntaxError

    task = inputs["task"]
    if isinstance(task, dict):
        task = ArcTask.from_dict(task, task.get("id", "task"))
    try:
        program = parse_dsl(inputs["program_text"])
    except DslSyntaxError as exc:
        from ..core.model import Verdict

        verdict = Verdict.errored(f"malformed output: {exc}")
    else:
        verdict = verify_program(program, task)
    return {"verdict": verdict_to_json(verdict), "passed": verdict.is_pass}


@register_op("run_method", ("task",), ("answer", "passed", "n_samples"))
def _run_method(params, inputs, ctx, node_id):
    from ..core.answers import normalize_answer
    from ..core.model import Task
    from ..core.verify import verify
    from ..methods import MethodConfig, run_method

    task = inputs["task"]
    if isinstance(task, dict):
        reference = task.get("reference")
        task = Task(
            id=task["id"],
            category=task.get("category", ""),
            prompt=task["prompt"],
            answer_kind=task["answer_kind"],
            reference=None if reference is None else normalize_answer(reference, task["answer_kind"]),
        )
    config = MethodConfig(
        method_id=params.get("method_id", "zero_shot"),
        n=params.get("n", 1),
        rounds=params.get("rounds", 1),
        weights=tuple(params["weights"]) if params.get("weights") else None,
        params=params.get("method_params", {}),
    )
    solver = ctx.solver(params["solver_id"])
    extra = [ctx.solver(s) for s in params.get("extra_solver_ids", [])]
    use_verifier = params.get("use_verifier", True) and (task.reference is not None or task.verifier is not None)
    result = run_method(
        config,
        solver,
        task,
        verifier=verify if use_verifier else None,
        extra_solvers=extra,
        seed=derive_seed(ctx.seed, node_id),
    )
    cand = result.candidate
    passed = verify(task, cand).is_pass if (task.reference or task.verifier) and cand.answer else False
    return {
        "answer": cand.answer.canonical_text() if cand.answer else None,
        "passed": passed,
        "n_samples": len(result.trace.samples),
    }
