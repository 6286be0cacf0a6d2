"""Importance-to-weight conversion and raw-value-to-utility location.

Everything here lands on the canonical [0, 1] scale: weights live on the
probability simplex, locations are per-attribute utilities. Raw values are
first min-max normalized against the attribute's anchors (direction-aware),
then shaped by the attribute's utility curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .model import (
    Attribute,
    CurveShape,
    CurveSpec,
    DecisionProblem,
    Direction,
    Kind,
    LINEAR_CURVE,
)


@dataclass(frozen=True)
class WeightVector:
    """Normalized attribute weights, aligned to problem attribute order."""

    weights: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> float:
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)


@dataclass(frozen=True)
class LocationMatrix:
    """Canonical [0, 1] locations per option, scenario, and attribute.

    ``rows[option][scenario][attribute]`` follows problem order everywhere.
    """

    option_names: tuple[str, ...]
    attribute_names: tuple[str, ...]
    rows: tuple[tuple[tuple[float, ...], ...], ...]


def weights_from_importance(scores: Sequence[float]) -> WeightVector:
    """Convert raw importance scores to weights by dividing by their sum.

    Raises ValueError on an empty list, a negative or non-finite score, or
    an all-zero list ("no positive importance").
    """
    if len(scores) == 0:
        raise ValueError("at least one importance score is required")
    for s in scores:
        if not math.isfinite(s):
            raise ValueError("importance scores must be finite")
        if s < 0:
            raise ValueError("importance scores must be non-negative")
    total = math.fsum(scores)
    if total <= 0:
        raise ValueError("no positive importance")
    return WeightVector(tuple(s / total for s in scores))


def group_weights(respondent_scores: Sequence[Sequence[float]]) -> WeightVector:
    """Pool several respondents' importance scores into one weight vector.

    Each respondent is normalized individually, the per-attribute mean is
    taken, and the mean is renormalized to guard against rounding drift.
    """
    if len(respondent_scores) == 0:
        raise ValueError("at least one respondent is required")
    width = len(respondent_scores[0])
    per_respondent: list[WeightVector] = []
    for r, scores in enumerate(respondent_scores):
        if len(scores) != width:
            raise ValueError(f"respondent {r}: expected {width} scores, got {len(scores)}")
        try:
            per_respondent.append(weights_from_importance(scores))
        except ValueError as exc:
            raise ValueError(f"respondent {r}: {exc}") from exc
    n = len(per_respondent)
    means = [math.fsum(w[i] for w in per_respondent) / n for i in range(width)]
    return weights_from_importance(means)


def normalize_value(x: float, low: float, high: float, direction: Direction) -> float:
    """Min-max normalize ``x`` against [low, high] onto [0, 1].

    Values outside the anchors are clamped first; for lower-is-better
    attributes the scale is flipped so 1 is always the desirable end.
    """
    if low >= high:
        raise ValueError("degenerate range: low must be strictly below high")
    clamped = min(max(x, low), high)
    t = (clamped - low) / (high - low)
    return 1.0 - t if direction is Direction.LOWER_BETTER else t


def apply_curve(t: float, curve: CurveSpec) -> float:
    """Shape a normalized value through a utility curve.

    Every shape fixes 0 -> 0 and 1 -> 1 and is monotone non-decreasing.
    ``t`` must already lie in [0, 1]; callers clamp before shaping.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"curve input must lie in [0, 1], got {t!r}")
    if curve.shape is CurveShape.LINEAR:
        return t
    if curve.shape is CurveShape.POWER:
        if curve.gamma is None or curve.gamma <= 0:
            raise ValueError("power curve requires gamma > 0")
        return t ** curve.gamma
    # s_shape: smoothstep, slow near the anchors and fast in the middle
    return t * t * (3.0 - 2.0 * t)


def locate(raw: float, attribute: Attribute) -> float:
    """Map one raw value onto the canonical [0, 1] utility scale."""
    if attribute.kind is Kind.DIRECT:
        if not 0.0 <= raw <= 100.0:
            raise ValueError(
                f"direct locator value for {attribute.name!r} must lie in [0, 100], got {raw!r}")
        return raw / 100.0
    t = normalize_value(raw, attribute.range_low, attribute.range_high, attribute.direction)
    return apply_curve(t, attribute.curve or LINEAR_CURVE)


def build_location_matrix(problem: DecisionProblem) -> LocationMatrix:
    """Locate every value of every scenario of every option."""
    rows = tuple(
        tuple(
            tuple(locate(scenario.values[attr.name], attr) for attr in problem.attributes)
            for scenario in option.scenarios
        )
        for option in problem.options
    )
    return LocationMatrix(
        option_names=tuple(o.name for o in problem.options),
        attribute_names=problem.attribute_names(),
        rows=rows,
    )
