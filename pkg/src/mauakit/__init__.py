"""mauakit: multi-attribute utility analysis.

Turns a decision problem (options scored on weighted attributes) into
normalized utilities, rankings, and weight-sensitivity reports, with a
JSON document format, a CLI, and an HTTP service on top.
"""

from .model import (
    Aggregation,
    Attribute,
    CurveShape,
    CurveSpec,
    DecisionProblem,
    Direction,
    DisplayScale,
    Issue,
    Kind,
    OptionRecord,
    Scenario,
    Severity,
    ValidationError,
    ValidationReport,
    validate_problem,
)
from .scaling import (
    LocationMatrix,
    WeightVector,
    apply_curve,
    build_location_matrix,
    group_weights,
    locate,
    normalize_value,
    weights_from_importance,
)
from .aggregation import (
    EvaluationResult,
    OptionEvaluation,
    RankEntry,
    Ranking,
    additive_utility,
    evaluate_problem,
    expected_utility,
    multiplicative_utility,
    rank_options,
)
from .sensitivity import (
    AttributeSensitivity,
    Breakpoint,
    Overrides,
    SensitivityReport,
    WhatIfDelta,
    critical_weights,
    sensitivity_report,
    sweep_weight,
    what_if,
)
from .io import (
    import_csv,
    parse_problem,
    results_to_csv,
    results_to_json,
    serialize_problem,
)

__version__ = "0.1.0"

__all__ = [
    "Aggregation", "Attribute", "CurveShape", "CurveSpec", "DecisionProblem",
    "Direction", "DisplayScale", "Issue", "Kind", "OptionRecord", "Scenario",
    "Severity", "ValidationError", "ValidationReport", "validate_problem",
    "LocationMatrix", "WeightVector", "apply_curve", "build_location_matrix",
    "group_weights", "locate", "normalize_value", "weights_from_importance",
    "EvaluationResult", "OptionEvaluation", "RankEntry", "Ranking",
    "additive_utility", "evaluate_problem", "expected_utility",
    "multiplicative_utility", "rank_options",
    "AttributeSensitivity", "Breakpoint", "Overrides", "SensitivityReport",
    "WhatIfDelta", "critical_weights", "sensitivity_report", "sweep_weight",
    "what_if",
    "import_csv", "parse_problem", "results_to_csv", "results_to_json",
    "serialize_problem",
]
