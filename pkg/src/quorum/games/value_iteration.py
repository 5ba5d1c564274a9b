"""Tabular value iteration over enumerable deterministic games."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigurationError, IntractableError
from ..seeds import rng_for
from .base import GameSpec

STATE_LIMIT = 1_000_000


@dataclass(frozen=True)
class ValueTable:
    values: dict
    policy: dict  # state -> greedy action (absent for terminal states)
    iterations: int
    residual: float


def enumerate_states(game: GameSpec, limit: int = STATE_LIMIT) -> list:
    """All states reachable from the initial state (deterministic games)."""
    if not game.enumerable:
        raise ConfigurationError(f"game {game.name} has stochastic hidden state")
    rng = rng_for(0, game.name, "enumerate")
    start = game.initial_state(rng)
    seen = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        if game.is_terminal(state):
            continue
        for action in game.legal_actions(state):
            nxt, _ = game.transition(state, action, rng)
            if nxt not in seen:
                if len(seen) >= limit:
                    raise IntractableError(f"more than {limit} reachable states")
                seen.add(nxt)
                stack.append(nxt)
    return list(seen)


def value_iterate(game: GameSpec, gamma: float, tol: float, max_iter: int = 100_000) -> ValueTable:
    """Bellman backups until the max residual drops below ``tol``.

    Terminal states are worth zero.  ``gamma == 1`` is refused unless
    the game guarantees termination, since values may diverge.
    """
    if not 0 <= gamma <= 1:
        raise ConfigurationError("gamma must be in [0, 1]")
    if tol <= 0:
        raise ConfigurationError("tol must be > 0")
    if gamma == 1 and not game.terminates:
        raise ConfigurationError(
            f"game {game.name} does not guarantee termination; use gamma < 1"
        )
    rng = rng_for(0, game.name, "vi")
    states = enumerate_states(game)
    # Precompute the deterministic transition table once.
    table = {}
    for s in states:
        if game.is_terminal(s):
            continue
        table[s] = [(a, *game.transition(s, a, rng)) for a in game.legal_actions(s)]

    values = {s: 0.0 for s in states}
    residual = 0.0
    for iteration in range(1, max_iter + 1):
        residual = 0.0
        for s, options in table.items():
            best = max(r + gamma * values[s2] for _, s2, r in options)
            residual = max(residual, abs(best - values[s]))
            values[s] = best
        if residual < tol:
            break
    policy = {}
    for s, options in table.items():
        policy[s] = max(options, key=lambda opt: opt[2] + gamma * values[opt[1]])[0]
    return ValueTable(values, policy, iteration, residual)


def rollout_greedy(game: GameSpec, table: ValueTable, max_steps: int | None = None):
    """Follow the greedy policy from the initial state; returns the states."""
    rng = rng_for(0, game.name, "rollout")
    state = game.initial_state(rng)
    visited = [state]
    for _ in range(max_steps or game.max_steps):
        if game.is_terminal(state) or state not in table.policy:
            break
        state, _ = game.transition(state, table.policy[state], rng)
        visited.append(state)
        if visited.count(state) > 2:  # cycling under a deterministic policy
            break
    return visited
