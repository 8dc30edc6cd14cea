"""morphdes: a workbench for hierarchical morphological design.

Rank leaf-level design alternatives with a crisp outranking relation,
compose them bottom-up through a tree-structured system model into
Pareto-efficient composite decisions under pairwise compatibility
constraints, and probe bottlenecks with what-if improvement actions.
"""

from .composition import (
    CompositeDecision,
    Dominance,
    QualityVector,
    brute_force_frontier,
    compose_node,
    dominates,
    feasible_combinations,
    pair_compatibility,
    pareto_frontier,
    peel_layers,
    quality_vector,
    solve,
)
from .errors import (
    DesignSpaceCapError,
    InfeasibleNodeError,
    MissingCompatibilityError,
    ModelfileError,
    MorphdesError,
    ShapeMismatchError,
    TargetNotFoundError,
    UndefinedWeightsError,
)
from .improvement import (
    ImprovementAction,
    WhatIfReport,
    apply_action,
    compat_bottlenecks,
    element_bottlenecks,
    evaluate_actions,
    parse_action,
    propose_actions,
)
from .model import (
    Alternative,
    CompatibilityTable,
    CompositePart,
    Criterion,
    Diagnostic,
    LeafPart,
    ModelConfig,
    SystemModel,
    WeightAssignment,
    design_space_size,
    oriented_value,
    validate,
)
from .modelfile import ParseDiagnostic, SourceSpan, parse, serialize, to_json
from .ranking import (
    LayerPartition,
    RankingParams,
    agreement_report,
    concordance,
    discordance,
    effective_priorities,
    layer_partition,
    outranking_relation,
    rank,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
