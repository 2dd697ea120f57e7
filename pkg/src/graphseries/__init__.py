"""Graph series, q-series catalog and identity verification."""

from .errors import GraphSeriesError
from .graphs import Graph, GraphSeriesSpec, builtin, evaluate
from .series import Series, q

__all__ = ["Series", "q", "Graph", "GraphSeriesSpec", "builtin", "evaluate", "GraphSeriesError"]
__version__ = "0.1.0"
