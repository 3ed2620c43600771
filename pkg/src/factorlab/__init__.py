"""factorlab: toughness machinery, factor criteria and finders, tree packing,
and an auditing engine that checks theorem hypotheses against constructed
certificates on desk-scale graph corpora."""

from .core import Budgets, DEFAULT_BUDGETS, FactorLabError, FormatError, PreconditionError, ScaleExceeded
from .graphs import MultiGraph, VertexFn, components, delete_set, emit_graph, induced, parse_graph

__all__ = [
    "Budgets",
    "DEFAULT_BUDGETS",
    "FactorLabError",
    "FormatError",
    "PreconditionError",
    "ScaleExceeded",
    "MultiGraph",
    "VertexFn",
    "components",
    "delete_set",
    "emit_graph",
    "induced",
    "parse_graph",
]

__version__ = "0.1.0"
