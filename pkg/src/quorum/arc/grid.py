"""Grid type re-export; the implementation lives at the package root so
that answer normalization can use it without import cycles."""

from ..grids import MAX_SIDE, N_COLORS, Grid

__all__ = ["MAX_SIDE", "N_COLORS", "Grid"]
