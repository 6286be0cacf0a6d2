"""Decision-problem data model and semantic validation.

A decision problem is a set of options scored on a set of weighted
attributes. Attribute values are either direct locator scores on a
0-100 scale or raw measurements mapped onto [0, 1] through a range,
a direction, and a utility curve. All types are immutable values;
construction never validates -- run :func:`validate_problem` before
feeding a problem to the scoring engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping


class DisplayScale(str, Enum):
    UNIT = "unit"          # report utilities on [0, 1]
    PERCENT = "percent"    # report utilities on [0, 100]


class Aggregation(str, Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


class Kind(str, Enum):
    DIRECT = "direct"      # value is already a 0-100 locator score
    DERIVED = "derived"    # value is a raw measurement needing normalization


class Direction(str, Enum):
    HIGHER_BETTER = "higher_better"
    LOWER_BETTER = "lower_better"


class CurveShape(str, Enum):
    LINEAR = "linear"
    POWER = "power"        # t**gamma: gamma < 1 concave, gamma > 1 convex
    S_SHAPE = "s_shape"    # smoothstep, slow-fast-slow


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


# Default exponents used when a document asks for "concave"/"convex"
# (or a bare power curve) without an explicit gamma.
CONCAVE_GAMMA = 0.5
CONVEX_GAMMA = 2.0


@dataclass(frozen=True)
class CurveSpec:
    """Monotone map from a normalized value in [0, 1] to a utility in [0, 1]."""

    shape: CurveShape = CurveShape.LINEAR
    gamma: float | None = None  # power shape only


LINEAR_CURVE = CurveSpec(shape=CurveShape.LINEAR)


@dataclass(frozen=True)
class Attribute:
    """One decision criterion.

    ``importance`` is the raw, user-assigned magnitude; weights are derived
    later by normalizing importances across the whole problem. Direct
    attributes carry none of the derived-value fields.
    """

    name: str
    importance: float
    kind: Kind = Kind.DIRECT
    direction: Direction | None = None
    range_low: float | None = None
    range_high: float | None = None
    curve: CurveSpec | None = None


@dataclass(frozen=True)
class Scenario:
    """One probability-weighted outcome: a value for every attribute."""

    probability: float
    values: Mapping[str, float]


@dataclass(frozen=True)
class OptionRecord:
    """A candidate choice; uncertainty is a discrete set of scenarios."""

    name: str
    scenarios: tuple[Scenario, ...]

    @staticmethod
    def single(name: str, values: Mapping[str, float]) -> "OptionRecord":
        """Build the common case: one certain outcome."""
        return OptionRecord(name=name, scenarios=(Scenario(1.0, dict(values)),))


@dataclass(frozen=True)
class DecisionProblem:
    name: str
    attributes: tuple[Attribute, ...]
    options: tuple[OptionRecord, ...]
    display_scale: DisplayScale = DisplayScale.UNIT
    aggregation: Aggregation = Aggregation.ADDITIVE
    schema_version: str = "1"

    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)


@dataclass(frozen=True)
class Issue:
    severity: Severity
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(i.severity is Severity.ERROR for i in self.issues)

    def errors(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity is Severity.ERROR)

    def warnings(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity is Severity.WARNING)


class ValidationError(ValueError):
    """Raised by operations that require a semantically valid problem."""

    def __init__(self, report: ValidationReport, context: str = ""):
        self.report = report
        first = report.errors()[0] if report.errors() else None
        detail = f"{first.path}: {first.message}" if first else "invalid problem"
        super().__init__(f"{context}: {detail}" if context else detail)


def _is_finite_number(x: object) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def validate_problem(problem: DecisionProblem) -> ValidationReport:
    """Check every semantic invariant of a decision problem.

    Pure and total: anything constructible is reportable, nothing raises.
    A problem whose report has no error-severity issues is guaranteed not
    to raise in the scaling and aggregation layers. Derived raw values
    outside their anchor range are reported as warnings only (the engine
    clamps them when locating).
    """
    issues: list[Issue] = []

    def error(path: str, message: str) -> None:
        issues.append(Issue(Severity.ERROR, path, message))

    def warning(path: str, message: str) -> None:
        issues.append(Issue(Severity.WARNING, path, message))

    if not problem.attributes:
        error("attributes", "at least one attribute is required")
    if not problem.options:
        error("options", "at least one option is required")

    seen_attrs: set[str] = set()
    any_positive_importance = False
    valid_attrs: dict[str, Attribute] = {}
    for i, attr in enumerate(problem.attributes):
        base = f"attributes[{i}]"
        if not attr.name:
            error(f"{base}.name", "attribute name must be non-empty")
        elif attr.name in seen_attrs:
            error(f"{base}.name", f"duplicate attribute name {attr.name!r}")
        seen_attrs.add(attr.name)

        if not _is_finite_number(attr.importance):
            error(f"{base}.importance", "importance must be a finite number")
        elif attr.importance < 0:
            error(f"{base}.importance", "importance must be non-negative")
        else:
            any_positive_importance = any_positive_importance or attr.importance > 0

        attr_ok = True
        if attr.kind is Kind.DIRECT:
            if attr.direction is not None:
                error(f"{base}.direction", "direction is only valid for derived attributes")
            if attr.range_low is not None or attr.range_high is not None:
                error(f"{base}.range", "range is only valid for derived attributes")
            if attr.curve is not None:
                error(f"{base}.curve", "curve is only valid for derived attributes")
        else:
            if attr.direction is None:
                error(f"{base}.direction", "derived attribute requires a direction")
                attr_ok = False
            if not _is_finite_number(attr.range_low) or not _is_finite_number(attr.range_high):
                error(f"{base}.range", "derived attribute requires finite range anchors")
                attr_ok = False
            elif attr.range_low >= attr.range_high:
                error(f"{base}.range", "degenerate range: range_low must be strictly below range_high")
                attr_ok = False
            attr_ok = _validate_curve(attr.curve, f"{base}.curve", error) and attr_ok
        if attr_ok and attr.name and attr.name not in valid_attrs:
            valid_attrs[attr.name] = attr

    if problem.attributes and not any_positive_importance:
        error("attributes", "no positive importance: at least one attribute must have importance > 0")

    attr_names = [a.name for a in problem.attributes]
    seen_options: set[str] = set()
    for j, option in enumerate(problem.options):
        obase = f"options[{j}]"
        if not option.name:
            error(f"{obase}.name", "option name must be non-empty")
        elif option.name in seen_options:
            error(f"{obase}.name", f"duplicate option name {option.name!r}")
        seen_options.add(option.name)

        if not option.scenarios:
            error(f"{obase}.scenarios", "option requires at least one scenario")
            continue

        prob_sum = 0.0
        probs_ok = True
        for k, scenario in enumerate(option.scenarios):
            sbase = f"{obase}.scenarios[{k}]"
            if not _is_finite_number(scenario.probability):
                error(f"{sbase}.probability", "probability must be a finite number")
                probs_ok = False
            elif not 0.0 <= scenario.probability <= 1.0:
                error(f"{sbase}.probability", "probability must lie in [0, 1]")
                probs_ok = False
            else:
                prob_sum += scenario.probability
            _validate_scenario_values(scenario, attr_names, valid_attrs, sbase, error, warning)

        if probs_ok:
            if len(option.scenarios) == 1:
                if option.scenarios[0].probability != 1.0:
                    error(f"{obase}.scenarios[0].probability",
                          "a single scenario must have probability exactly 1")
            elif abs(prob_sum - 1.0) > 1e-9:
                error(f"{obase}.scenarios",
                      f"scenario probabilities must sum to 1 (got {prob_sum!r})")

    return ValidationReport(tuple(issues))


def _validate_curve(curve: CurveSpec | None, path: str, error) -> bool:
    if curve is None:
        return True  # absent curve means linear
    if curve.shape is CurveShape.POWER:
        if not _is_finite_number(curve.gamma) or curve.gamma <= 0:
            error(f"{path}.gamma", "power curve requires gamma > 0")
            return False
    elif curve.gamma is not None:
        error(f"{path}.gamma", "gamma is only valid for power curves")
        return False
    return True


def _validate_scenario_values(
    scenario: Scenario,
    attr_names: Iterable[str],
    valid_attrs: Mapping[str, Attribute],
    sbase: str,
    error,
    warning,
) -> None:
    for name in attr_names:
        if name not in scenario.values:
            error(f"{sbase}.values.{name}", f"missing value for attribute {name!r}")
    for name, value in scenario.values.items():
        vpath = f"{sbase}.values.{name}"
        if name not in attr_names:
            error(vpath, f"value for unknown attribute {name!r}")
            continue
        if not _is_finite_number(value):
            error(vpath, "value must be a finite number")
            continue
        attr = valid_attrs.get(name)
        if attr is None:
            continue  # attribute itself is broken; already reported
        if attr.kind is Kind.DIRECT:
            if not 0.0 <= value <= 100.0:
                error(vpath, "direct locator values must lie in [0, 100]")
        elif not (attr.range_low <= value <= attr.range_high):
            warning(vpath, f"value {value!r} is outside the anchor range "
                           f"[{attr.range_low!r}, {attr.range_high!r}] and will be clamped")


def require_valid(problem: DecisionProblem, context: str = "") -> ValidationReport:
    """Validate and raise :class:`ValidationError` on any error-severity issue."""
    report = validate_problem(problem)
    if not report.ok:
        raise ValidationError(report, context)
    return report
