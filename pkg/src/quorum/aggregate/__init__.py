from .coverage import ORDERINGS, CoverageCurve, coverage_curve
from .matrix import ResultMatrix, or_aggregate, success_rate
from .render import parse_matrix, render_matrix

__all__ = [
    "ORDERINGS",
    "CoverageCurve",
    "coverage_curve",
    "ResultMatrix",
    "or_aggregate",
    "success_rate",
    "parse_matrix",
    "render_matrix",
]
