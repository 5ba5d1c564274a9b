from .base import Solver, SolverError, sample, supports_two_stage
from .chat import (
    ChatAuthError,
    ChatClient,
    ChatError,
    ChatRateLimitError,
    ChatRequestError,
    ChatServerError,
    ChatSolver,
)
from .scripted import ScriptedSolver, TransformSolver

__all__ = [
    "Solver",
    "SolverError",
    "sample",
    "supports_two_stage",
    "ChatAuthError",
    "ChatClient",
    "ChatError",
    "ChatRateLimitError",
    "ChatRequestError",
    "ChatServerError",
    "ChatSolver",
    "ScriptedSolver",
    "TransformSolver",
    "resolve_solver",
]


def resolve_solver(binding, cache_root="cache"):
    """Build a concrete solver from a :class:`~quorum.core.model.SolverBinding`."""
    from ..core.model import SolverBinding
    from ..errors import ConfigurationError

    if not isinstance(binding, SolverBinding):
        raise ConfigurationError(f"expected SolverBinding, got {type(binding).__name__}")
    params = dict(binding.params)
    if binding.kind == "scripted":
        return ScriptedSolver(
            binding.id,
            table={k: [tuple(e) for e in v] for k, v in params.get("table", {}).items()},
            rng_seed=params.get("rng_seed", 0),
            prompt_triggers={
                t: {k: [tuple(e) for e in v] for k, v in tab.items()}
                for t, tab in params.get("prompt_triggers", {}).items()
            },
            two_stage={
                k: [(pre, p, [tuple(e) for e in tab]) for pre, p, tab in v]
                for k, v in params.get("two_stage", {}).items()
            },
        )
    if binding.kind == "http-model":
        client = ChatClient(
            base_url=params["base_url"],
            model=params["model"],
            cache_dir=params.get("cache_dir", cache_root),
            api_key_env=params.get("api_key_env", "OPENAI_API_KEY"),
            temperature=params.get("temperature", 1.0),
            max_tokens=params.get("max_tokens"),
            timeout_s=params.get("timeout_s", 60.0),
            max_retries=params.get("max_retries", 3),
            max_in_flight=params.get("max_in_flight", 4),
        )
        return ChatSolver(binding.id, client)
    raise ConfigurationError(f"cannot resolve solver kind {binding.kind!r}")
