"""Run persistence.

A run is a directory: ``config.json`` (the configuration snapshot) and
``record.jsonl`` with one JSON object per (task, solver) cell.  Records
are append-only; loading a run rebuilds the result matrix bit-exactly.
Field names in the files are part of the stable interface:

cell object keys: ``task_id``, ``solver_id``, ``ts_ms``, ``candidate``,
``verdict``, optional ``trace``.
candidate keys: ``answer_kind``, ``answer``, ``solver_id``,
``method_id``, ``seed``, ``elapsed_ms``, ``rationale``, ``error``.
verdict keys: ``status``, ``detail``, ``checks`` (list of
``[name, passed, detail]`` triples).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import RecordParseError
from .answers import AnswerValue, normalize_answer
from .model import Candidate, Check, Verdict


def _answer_to_json(answer: Optional[AnswerValue]):
    if answer is None:
        return None
    if answer.kind == "grid":
        return answer.payload.to_lists()
    return answer.payload


def _answer_from_json(kind: Optional[str], payload):
    if kind is None or payload is None:
        return None
    return normalize_answer(payload, kind)


def candidate_to_json(c: Candidate) -> dict:
    return {
        "answer_kind": c.answer.kind if c.answer else None,
        "answer": _answer_to_json(c.answer),
        "solver_id": c.solver_id,
        "method_id": c.method_id,
        "seed": c.seed,
        "elapsed_ms": c.elapsed_ms,
        "rationale": c.rationale,
        "error": c.error,
    }


def candidate_from_json(d: dict) -> Candidate:
    return Candidate(
        answer=_answer_from_json(d.get("answer_kind"), d.get("answer")),
        solver_id=d["solver_id"],
        method_id=d["method_id"],
        seed=d["seed"],
        elapsed_ms=d["elapsed_ms"],
        rationale=d.get("rationale"),
        error=d.get("error"),
    )


def verdict_to_json(v: Verdict) -> dict:
    return {
        "status": v.status,
        "detail": v.detail,
        "checks": [[c.name, c.passed, c.detail] for c in v.checks],
    }


def verdict_from_json(d: dict) -> Verdict:
    return Verdict(d["status"], tuple(Check(n, p, det) for n, p, det in d["checks"]), d["detail"])


@dataclass(frozen=True)
class CellRecord:
    task_id: str
    solver_id: str
    candidate: Candidate
    verdict: Verdict
    ts_ms: int = 0
    trace: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "task_id": self.task_id,
            "solver_id": self.solver_id,
            "ts_ms": self.ts_ms,
            "candidate": candidate_to_json(self.candidate),
            "verdict": verdict_to_json(self.verdict),
        }
        if self.trace is not None:
            out["trace"] = self.trace
        return out

    @classmethod
    def from_json(cls, d: dict) -> "CellRecord":
        return cls(
            task_id=d["task_id"],
            solver_id=d["solver_id"],
            candidate=candidate_from_json(d["candidate"]),
            verdict=verdict_from_json(d["verdict"]),
            ts_ms=d.get("ts_ms", 0),
            trace=d.get("trace"),
        )


@dataclass
class RunRecord:
    run_id: str
    config: dict
    cells: list[CellRecord] = field(default_factory=list)

    def add(self, cell: CellRecord):
        self.cells.append(cell)

    def to_matrix(self):
        """Rebuild the task x solver boolean matrix from the cells."""
        from ..aggregate.matrix import ResultMatrix

        task_ids, solver_ids = [], []
        for cell in self.cells:
            if cell.task_id not in task_ids:
                task_ids.append(cell.task_id)
            if cell.solver_id not in solver_ids:
                solver_ids.append(cell.solver_id)
        solved = [[False] * len(solver_ids) for _ in task_ids]
        elapsed = [[None] * len(solver_ids) for _ in task_ids]
        for cell in self.cells:
            i, k = task_ids.index(cell.task_id), solver_ids.index(cell.solver_id)
            solved[i][k] = cell.verdict.is_pass
            elapsed[i][k] = cell.candidate.elapsed_ms
        return ResultMatrix(task_ids, solver_ids, solved, elapsed)


class RunStore:
    """Directory-backed store, one subdirectory per run."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _dir(self, run_id: str) -> Path:
        return self.root / run_id

    def record_run(self, record: RunRecord) -> str:
        run_dir = self._dir(record.run_id)
        run_dir.mkdir(parents=True, exist_ok=True)
        with open(run_dir / "config.json", "w") as fh:
            json.dump(record.config, fh, indent=2, sort_keys=True)
            fh.write("\n")
        tmp = run_dir / "record.jsonl.tmp"
        with open(tmp, "w") as fh:
            for cell in record.cells:
                fh.write(json.dumps(cell.to_json(), sort_keys=True))
                fh.write("\n")
        os.replace(tmp, run_dir / "record.jsonl")
        return record.run_id

    def load_run(self, run_id: str) -> RunRecord:
        run_dir = self._dir(run_id)
        config_path = run_dir / "config.json"
        record_path = run_dir / "record.jsonl"
        if not record_path.exists():
            raise FileNotFoundError(f"no run {run_id!r} under {self.root}")
        with open(config_path) as fh:
            config = json.load(fh)
        cells = []
        offset = 0
        with open(record_path, "rb") as fh:
            for raw in fh:
                line = raw.decode("utf-8", errors="replace").strip()
                if line:
                    try:
                        cells.append(CellRecord.from_json(json.loads(line)))
                    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
                        raise RecordParseError(f"corrupt cell record: {exc}", offset) from exc
                offset += len(raw)
        return RunRecord(run_id, config, cells)

    def list_runs(self) -> list[str]:
        return sorted(p.name for p in self.root.iterdir() if (p / "record.jsonl").exists())
