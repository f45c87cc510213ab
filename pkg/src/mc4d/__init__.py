"""Multi-criteria decision engine.

Model a decision as alternatives scored against typed, weighted criteria;
screen out alternatives that violate hard requirements; evaluate the rest
with a network process (or simple additive weighting) into ratio-scale
scores; and explore how the ranking reacts to weight changes.
"""

from mc4d.methods import (
    EvaluationResult,
    available_methods,
    evaluate,
    rank,
    saw_scores,
)
from mc4d.model import (
    Alternative,
    AttributeValue,
    BinaryScale,
    Cluster,
    CriteriaNetwork,
    Criterion,
    Judgment,
    MethodConfig,
    NominalScale,
    RatioScale,
    Requirement,
    Scenario,
    ValidationReport,
    attribute_to_criterion_values,
    measured,
    textual,
    validate_scenario,
)
from mc4d.network import (
    Supermatrix,
    anp_scores,
    build_supermatrix,
    limit_supermatrix,
    synthesize_bocr,
    weight_supermatrix,
)
from mc4d.priorities import (
    ConsistencyReport,
    PairwiseMatrix,
    PriorityVector,
    consistency,
    derive_priorities,
    direct_priorities,
    judgments_to_matrix,
)
from mc4d.satisficing import FilterOutcome, filter_alternatives
from mc4d.sensitivity import SensitivitySweep, weight_sweep
from mc4d.storage import SessionStore, parse_scenario, scenario_to_dict, serialize_scenario

__version__ = "0.1.0"

__all__ = [
    "Alternative",
    "AttributeValue",
    "BinaryScale",
    "Cluster",
    "ConsistencyReport",
    "CriteriaNetwork",
    "Criterion",
    "EvaluationResult",
    "FilterOutcome",
    "Judgment",
    "MethodConfig",
    "NominalScale",
    "PairwiseMatrix",
    "PriorityVector",
    "RatioScale",
    "Requirement",
    "Scenario",
    "SensitivitySweep",
    "SessionStore",
    "Supermatrix",
    "ValidationReport",
    "anp_scores",
    "attribute_to_criterion_values",
    "available_methods",
    "build_supermatrix",
    "consistency",
    "derive_priorities",
    "direct_priorities",
    "evaluate",
    "filter_alternatives",
    "judgments_to_matrix",
    "limit_supermatrix",
    "measured",
    "parse_scenario",
    "rank",
    "saw_scores",
    "scenario_to_dict",
    "serialize_scenario",
    "synthesize_bocr",
    "textual",
    "validate_scenario",
    "weight_supermatrix",
    "weight_sweep",
]
