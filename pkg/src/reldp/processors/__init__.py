"""Processors on relative DP problems."""

from .base import ProcessorError, ProcessorResult
from .graph import cap, dependency_graph, estimated_graph, graph_sccs
from .interpretation import (
    LinearInterpretation,
    Monotonicity,
    first_violation,
    reduction_pair,
    search_reduction_pair,
)
from .labeling import (
    FiniteModel,
    iter_models,
    label,
    labeled_variants,
    model_violation,
    search_model,
    semantic_labeling,
    unlabel,
    unlabel_rule,
)
from .split import split, split_by_index, trivial

__all__ = [
    "FiniteModel",
    "LinearInterpretation",
    "Monotonicity",
    "ProcessorError",
    "ProcessorResult",
    "cap",
    "dependency_graph",
    "estimated_graph",
    "first_violation",
    "graph_sccs",
    "iter_models",
    "label",
    "labeled_variants",
    "model_violation",
    "reduction_pair",
    "search_model",
    "search_reduction_pair",
    "semantic_labeling",
    "split",
    "split_by_index",
    "trivial",
    "unlabel",
    "unlabel_rule",
]
