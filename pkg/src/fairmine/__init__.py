"""fairmine: audit tabular classifiers for discriminatory itemsets."""

from .causal import ParentSet, ResolvingSuggestion, discover_parents, suggest_resolving
from .data import (
    AttributeSpec,
    Dataset,
    DiscretizedDataset,
    apply_discretization,
    attach_predictions,
    attribute_histograms,
    discretize_all,
    load_dataset,
)
from .discrimination import (
    AnalysisConfig,
    DiscriminatoryItemset,
    ItemsetCollection,
    ModelComparison,
    ScatterPoint,
    build_inclusion_hierarchy,
    compare_models,
    compute_risk_difference,
    group_by_resolving,
    mine_discriminatory_itemsets,
    order_rows_jaccard,
    scatter_summary,
)
from .mdl import CutPoints, discretize_mdl
from .mitigation import MitigationPlan, MitigationReport, apply_plan, plan_reject_option
from .ripples import (
    Atom,
    RippleGeometry,
    aggregate_items,
    compute_atoms,
    layout_rippleset,
    outline_set,
)
from .rules import (
    ClassificationRule,
    Condition,
    extract_classification_rules,
    mine_frequent_itemsets,
)
from .session import AuditEngine

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "Atom",
    "AttributeSpec",
    "AuditEngine",
    "ClassificationRule",
    "Condition",
    "CutPoints",
    "Dataset",
    "DiscretizedDataset",
    "DiscriminatoryItemset",
    "ItemsetCollection",
    "MitigationPlan",
    "MitigationReport",
    "ModelComparison",
    "ParentSet",
    "ResolvingSuggestion",
    "RippleGeometry",
    "ScatterPoint",
    "aggregate_items",
    "apply_discretization",
    "apply_plan",
    "attach_predictions",
    "attribute_histograms",
    "build_inclusion_hierarchy",
    "compare_models",
    "compute_atoms",
    "compute_risk_difference",
    "discover_parents",
    "discretize_all",
    "discretize_mdl",
    "extract_classification_rules",
    "group_by_resolving",
    "layout_rippleset",
    "load_dataset",
    "mine_discriminatory_itemsets",
    "mine_frequent_itemsets",
    "order_rows_jaccard",
    "outline_set",
    "plan_reject_option",
    "scatter_summary",
    "suggest_resolving",
]
