"""Optimal harmonious coloring of tall forests, with exact search,
lower bounds, and instance generators.
"""

from .coloring import (
    ColorConflict,
    ColorState,
    PartialColoring,
    TheoremPreconditionError,
    assign,
    emit_coloring,
    is_harmonious,
    lower_bound_degree,
    lower_bound_nonadjacent,
    lower_bound_pairs,
    parse_coloring,
    predict_h,
)
from .construct import (
    CaseTag,
    ColoringResult,
    ConstructionDefect,
    GreedyConfig,
    GreedyStuck,
    classify_case,
    color_case0,
    color_case2_t3,
    color_case2_t4,
    color_with_pendant,
    greedy_extend,
    harmonious_color,
    initial_coloring_case4,
    initial_star_coloring,
    small_delta_color,
)
from .exact import ExactResult, SearchBudgetExceeded, exact_h, is_colorable_k
from .forest import (
    DegreeOrdering,
    Forest,
    GraphInputError,
    connect_forest,
    degree_ordering,
    emit_edge_list,
    is_double_broom,
    parse_edge_list,
    path_between,
)
from .instances import (
    build_double_broom,
    build_t_delta,
    enumerate_trees,
    prufer_decode,
    prufer_encode,
    random_theorem_instance,
)

__version__ = "0.1.0"

__all__ = [
    "CaseTag",
    "ColorConflict",
    "ColorState",
    "ColoringResult",
    "ConstructionDefect",
    "DegreeOrdering",
    "ExactResult",
    "Forest",
    "GraphInputError",
    "GreedyConfig",
    "GreedyStuck",
    "PartialColoring",
    "SearchBudgetExceeded",
    "TheoremPreconditionError",
    "assign",
    "build_double_broom",
    "build_t_delta",
    "classify_case",
    "color_case0",
    "color_case2_t3",
    "color_case2_t4",
    "color_with_pendant",
    "connect_forest",
    "degree_ordering",
    "emit_coloring",
    "emit_edge_list",
    "enumerate_trees",
    "exact_h",
    "greedy_extend",
    "harmonious_color",
    "initial_coloring_case4",
    "initial_star_coloring",
    "is_colorable_k",
    "is_double_broom",
    "is_harmonious",
    "lower_bound_degree",
    "lower_bound_nonadjacent",
    "lower_bound_pairs",
    "parse_coloring",
    "parse_edge_list",
    "path_between",
    "predict_h",
    "prufer_decode",
    "prufer_encode",
    "random_theorem_instance",
    "small_delta_color",
]
