"""Immutable colored grid, the unit every puzzle operation acts on.

Cells are color indices 0..9 stored row-major; dimensions are capped at
30x30. Grids hash and compare by value so they can key caches and sit
inside answer payloads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import GridBoundsError

MAX_SIDE = 30
N_COLORS = 10


@dataclass(frozen=True)
class Grid:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise GridBoundsError("grid must have at least one row and one column")
        h, w = len(self.cells), len(self.cells[0])
        if h > MAX_SIDE or w > MAX_SIDE:
            raise GridBoundsError(f"grid {h}x{w} exceeds {MAX_SIDE}x{MAX_SIDE}")
        for r, row in enumerate(self.cells):
            if len(row) != w:
                raise GridBoundsError(f"ragged row {r}: expected width {w}, got {len(row)}")
            for c, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < N_COLORS:
                    raise GridBoundsError(f"cell ({r},{c}) color {v!r} outside 0..{N_COLORS - 1}")

    @property
    def height(self) -> int:
        return len(self.cells)

    @property
    def width(self) -> int:
        return len(self.cells[0])

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "Grid":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Grid":
        return cls.from_rows(np.asarray(arr).tolist())

    @classmethod
    def from_text(cls, text: str) -> "Grid":
        """Parse digit rows, one line per row (the wire format)."""
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        if not lines:
            raise GridBoundsError("empty grid text")
        rows = []
        for ln in lines:
            if not ln.isdigit():
                raise GridBoundsError(f"non-digit character in grid row {ln!r}")
            rows.append([int(ch) for ch in ln])
        return cls.from_rows(rows)

    def to_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.int8)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.cells]

    def to_text(self) -> str:
        return "\n".join("".join(str(v) for v in row) for row in self.cells)

    def __str__(self) -> str:
        return self.to_text()
