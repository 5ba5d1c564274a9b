"""Method configuration and report types."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..core.answers import AnswerValue
from ..errors import ConfigurationError

METHOD_IDS = (
    "zero_shot",
    "best_of_n",
    "self_consistency",
    "mixture_of_agents",
    "mcts",
    "rto",
    "prover_verifier",
    "plan_search",
    "leap",
)

WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class MethodConfig:
    method_id: str
    n: int = 1  # samples / rollouts / plans / retries, per method
    weights: Optional[tuple[float, ...]] = None
    rounds: int = 1
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method_id not in METHOD_IDS:
            raise ConfigurationError(f"unknown method {self.method_id!r}")
        if self.n < 1:
            raise ConfigurationError("n must be >= 1")
        if self.rounds < 1:
            raise ConfigurationError("rounds must be >= 1")
        if self.weights is not None:
            if any(w < 0 for w in self.weights):
                raise ConfigurationError("weights must be non-negative")
            total = sum(self.weights)
            if abs(total - 1.0) > WEIGHT_TOL:
                raise ConfigurationError(f"weights sum to {total}, not 1")


@dataclass(frozen=True)
class Principles:
    """Rules distilled from worked examples, used to steer a solver."""

    items: tuple[str, ...]
    source_examples: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.source_examples and not self.items:
            raise ConfigurationError("principles derived from examples must be non-empty")

    def render(self) -> str:
        return "\n".join(f"- {item}" for item in self.items)


@dataclass(frozen=True)
class ConsensusReport:
    """Agreement of a candidate pool with its modal answer."""

    modal_answer: AnswerValue
    c: Fraction
    diversity: Fraction

    def __post_init__(self):
        if not 0 <= self.c <= 1:
            raise ValueError(f"consensus {self.c} outside [0,1]")
        if self.diversity != 1 - self.c:
            raise ValueError("diversity must equal 1 - c exactly")
