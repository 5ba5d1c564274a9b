"""Graph-edit operators.

A mutation either yields a new valid graph or is rejected whole; the
original graph is never touched.  Kinds cover the meta-learning levels:
parameter search, prompt edits, data edits, and topology edits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import QuorumError
from .model import Edge, GraphValidationError, NodeDef, PipelineGraph

MUTATION_KINDS = (
    "edit_param",
    "add_node",
    "remove_node",
    "add_edge",
    "remove_edge",
    "edit_prompt",
    "add_data",
    "remove_data",
)


class MutationError(QuorumError):
    pass


@dataclass(frozen=True)
class Mutation:
    kind: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in MUTATION_KINDS:
            raise MutationError(f"unknown mutation kind {self.kind!r}")


def _need(payload: dict, *keys):
    missing = [k for k in keys if k not in payload]
    if missing:
        raise MutationError(f"payload missing {missing}")


def mutate(graph: PipelineGraph, mutation: Mutation) -> PipelineGraph:
    """Apply one mutation, returning a new graph or raising MutationError."""
    nodes = dict(graph.nodes)
    edges = set(graph.edges)
    data = dict(graph.data)
    p = mutation.payload
    kind = mutation.kind

    if kind in ("edit_param", "edit_prompt"):
        _need(p, "node", "key", "value")
        if p["node"] not in nodes:
            raise MutationError(f"no node {p['node']!r}")
        node = nodes[p["node"]]
        if kind == "edit_prompt":
            old = node.params.get(p["key"])
            if old is not None and not isinstance(old, str):
                raise MutationError(f"param {p['key']!r} of {p['node']!r} is not a prompt string")
            if not isinstance(p["value"], str):
                raise MutationError("edit_prompt value must be a string")
        nodes[p["node"]] = NodeDef(node.op, {**node.params, p["key"]: p["value"]})
    elif kind == "add_node":
        _need(p, "node", "op")
        if p["node"] in nodes:
            raise MutationError(f"node {p['node']!r} already exists")
        nodes[p["node"]] = NodeDef(p["op"], p.get("params", {}))
    elif kind == "remove_node":
        _need(p, "node")
        if p["node"] not in nodes:
            raise MutationError(f"no node {p['node']!r}")
        del nodes[p["node"]]
        edges = {e for e in edges if p["node"] not in (e.src, e.dst)}
    elif kind == "add_edge":
        _need(p, "src", "out_port", "dst", "in_port")
        edge = Edge(p["src"], p["out_port"], p["dst"], p["in_port"])
        if edge in edges:
            raise MutationError(f"edge {edge} already present")
        edges.add(edge)
    elif kind == "remove_edge":
        _need(p, "src", "out_port", "dst", "in_port")
        edge = Edge(p["src"], p["out_port"], p["dst"], p["in_port"])
        if edge not in edges:
            raise MutationError(f"no edge {edge}")
        edges.discard(edge)
    elif kind == "add_data":
        _need(p, "name", "item")
        data[p["name"]] = data.get(p["name"], ()) + (p["item"],)
    elif kind == "remove_data":
        _need(p, "name", "index")
        items = data.get(p["name"], ())
        if not 0 <= p["index"] < len(items):
            raise MutationError(f"data {p['name']!r} has no index {p['index']}")
        data[p["name"]] = items[:p["index"]] + items[p["index"] + 1:]

    inputs = {
        name: tuple(b for b in bindings if b[0] in nodes)
        for name, bindings in graph.inputs.items()
    }
    outputs = {name: ref for name, ref in graph.outputs.items() if ref[0] in nodes}
    try:
        return PipelineGraph(
            nodes=nodes,
            edges=frozenset(edges),
            inputs=inputs,
            outputs=outputs,
            data=data,
            name=graph.name,
        )
    except GraphValidationError as exc:
        raise MutationError(f"mutation rejected: {exc}") from exc
