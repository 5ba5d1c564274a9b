from .combinators import (
    MethodResult,
    MethodTrace,
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
from .config import METHOD_IDS, ConsensusReport, MethodConfig, Principles
from .dispatch import run_method

__all__ = [
    "MethodResult",
    "MethodTrace",
    "best_of_n",
    "consensus",
    "leap",
    "mcts_resample",
    "mixture_of_agents",
    "modal_answer",
    "plan_search",
    "prover_verifier",
    "round_trip",
    "self_consistency",
    "zero_shot",
    "METHOD_IDS",
    "ConsensusReport",
    "MethodConfig",
    "Principles",
    "run_method",
]
