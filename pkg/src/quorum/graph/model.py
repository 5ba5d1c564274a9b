"""Pipeline graphs: operation nodes wired by typed ports.

A graph is a DAG of operation nodes.  Every node input port is fed by
exactly one edge or one declared graph input; operations and their
port lists come from the registry in :mod:`quorum.graph.ops`.  Graphs
also carry named data lists (few-shot examples and similar) that
mutations can edit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import QuorumError


class GraphValidationError(QuorumError):
    pass


@dataclass(frozen=True)
class NodeDef:
    op: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Edge:
    src: str
    out_port: str
    dst: str
    in_port: str

    def __str__(self) -> str:
        return f"{self.src}.{self.out_port}->{self.dst}.{self.in_port}"


@dataclass(frozen=True)
class PipelineGraph:
    nodes: dict  # node id -> NodeDef
    edges: frozenset  # of Edge
    inputs: dict  # graph input name -> tuple of (node, in_port)
    outputs: dict  # graph output name -> (node, out_port)
    data: dict = field(default_factory=dict)  # name -> tuple of items
    name: str = "pipeline"

    def __post_init__(self):
        self.validate()

    def validate(self):
        from .ops import op_def

        for node_id, node in self.nodes.items():
            if not node_id:
                raise GraphValidationError("empty node id")
            op_def(node.op)  # raises on unknown op
        fed: dict[tuple, str] = {}
        for edge in self.edges:
            for end, port, direction in ((edge.src, edge.out_port, "out"), (edge.dst, edge.in_port, "in")):
                if end not in self.nodes:
                    raise GraphValidationError(f"edge {edge} references missing node {end!r}")
                ports = op_def(self.nodes[end].op).outputs if direction == "out" else op_def(self.nodes[end].op).inputs
                if port not in ports:
                    raise GraphValidationError(f"edge {edge}: node {end!r} has no {direction} port {port!r}")
            key = (edge.dst, edge.in_port)
            if key in fed:
                raise GraphValidationError(f"input port {key} fed twice ({fed[key]} and {edge})")
            fed[key] = str(edge)
        for name, bindings in self.inputs.items():
            for node_id, port in bindings:
                if node_id not in self.nodes:
                    raise GraphValidationError(f"graph input {name!r} feeds missing node {node_id!r}")
                if port not in op_def(self.nodes[node_id].op).inputs:
                    raise GraphValidationError(f"graph input {name!r}: node {node_id!r} has no in port {port!r}")
                if (node_id, port) in fed:
                    raise GraphValidationError(f"input port ({node_id!r}, {port!r}) fed by edge and graph input")
                fed[(node_id, port)] = f"input:{name}"
        for node_id, node in self.nodes.items():
            for port in op_def(node.op).inputs:
                if (node_id, port) not in fed:
                    raise GraphValidationError(f"input port ({node_id!r}, {port!r}) is unfed")
        for name, (node_id, port) in self.outputs.items():
            if node_id not in self.nodes:
                raise GraphValidationError(f"graph output {name!r} reads missing node {node_id!r}")
            if port not in op_def(self.nodes[node_id].op).outputs:
                raise GraphValidationError(f"graph output {name!r}: node {node_id!r} has no out port {port!r}")
        self.topological_order()  # raises on cycles

    def dependencies(self) -> dict:
        deps = {node_id: set() for node_id in self.nodes}
        for edge in self.edges:
            deps[edge.dst].add(edge.src)
        return deps

    def topological_order(self) -> list[str]:
        """Kahn's algorithm with an id-sorted ready set: one canonical order."""
        deps = self.dependencies()
        remaining = dict(deps)
        order = []
        while remaining:
            ready = sorted(n for n, d in remaining.items() if not d & remaining.keys())
            if not ready:
                cycle = sorted(remaining)
                raise GraphValidationError(f"cycle among nodes {cycle}")
            for n in ready:
                order.append(n)
                del remaining[n]
        return order

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "nodes": {nid: {"op": n.op, "params": n.params} for nid, n in sorted(self.nodes.items())},
            "edges": sorted([e.src, e.out_port, e.dst, e.in_port] for e in self.edges),
            "inputs": {k: [list(b) for b in v] for k, v in sorted(self.inputs.items())},
            "outputs": {k: list(v) for k, v in sorted(self.outputs.items())},
            "data": {k: list(v) for k, v in sorted(self.data.items())},
        }

    @classmethod
    def from_json(cls, payload: dict) -> "PipelineGraph":
        try:
            return cls(
                nodes={nid: NodeDef(n["op"], n.get("params", {})) for nid, n in payload["nodes"].items()},
                edges=frozenset(Edge(*spec) for spec in payload.get("edges", [])),
                inputs={k: tuple(tuple(b) for b in v) for k, v in payload.get("inputs", {}).items()},
                outputs={k: tuple(v) for k, v in payload.get("outputs", {}).items()},
                data={k: tuple(v) for k, v in payload.get("data", {}).items()},
                name=payload.get("name", "pipeline"),
            )
        except (KeyError, TypeError) as exc:
            raise GraphValidationError(f"bad graph structure: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "PipelineGraph":
        with open(path) as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise GraphValidationError(f"{path}: {exc}") from exc
        return cls.from_json(payload)

    def save(self, path: str | Path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
