"""Weight sensitivity: sweeps, exact breakpoints, and what-if overrides.

Sweep semantics: the swept attribute's weight is pinned to t and the
remaining weights are rescaled proportionally to fill 1 - t, preserving
their relative importance. In additive single-scenario problems each
option's utility is then affine in t, so the exact t values where the
winner changes fall out of pairwise line intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .aggregation import (
    EvaluationResult,
    Ranking,
    evaluate_problem,
    rank_options,
    rank_utilities,
    utilities_for_weights,
)
from .model import (
    Aggregation,
    DecisionProblem,
    Issue,
    Severity,
    ValidationError,
    ValidationReport,
    require_valid,
)
from .scaling import LocationMatrix, WeightVector, build_location_matrix, weights_from_importance

#: Breakpoints this close to an endpoint are artifacts, not decisions.
ENDPOINT_EPS = 1e-9


@dataclass(frozen=True)
class Breakpoint:
    t: float
    left: str    # top option just below t
    right: str   # top option just above t


@dataclass(frozen=True)
class AttributeSensitivity:
    """How the winner responds to sweeping one attribute's weight."""

    attribute: str
    top_at_zero: str
    top_at_one: str
    breakpoints: tuple[Breakpoint, ...]


@dataclass(frozen=True)
class SensitivityReport:
    entries: tuple[AttributeSensitivity, ...]


@dataclass(frozen=True)
class Overrides:
    """What-if deltas: new importances by attribute, new raw values by
    option and attribute (applied to every scenario of the option)."""

    importances: Mapping[str, float] = field(default_factory=dict)
    values: Mapping[str, Mapping[str, float]] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not self.importances and not self.values


@dataclass(frozen=True)
class OptionDelta:
    option: str
    utility_before: float
    utility_after: float
    delta: float
    rank_before: int
    rank_after: int


@dataclass(frozen=True)
class WhatIfDelta:
    overrides: Overrides
    before: EvaluationResult
    after: EvaluationResult
    before_ranking: Ranking
    after_ranking: Ranking
    deltas: tuple[OptionDelta, ...]


def _attribute_index(problem: DecisionProblem, attribute: str) -> int:
    for i, attr in enumerate(problem.attributes):
        if attr.name == attribute:
            return i
    raise ValueError(f"unknown attribute {attribute!r}")


def reweighted(weights: WeightVector, index: int, t: float) -> WeightVector:
    """Pin weight ``index`` to t, rescale the rest proportionally to 1 - t.

    If the remaining weights are all zero there is no proportion to keep,
    so 1 - t is spread uniformly.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"swept weight must lie in [0, 1], got {t!r}")
    rest = [w for i, w in enumerate(weights) if i != index]
    rest_sum = sum(rest)
    out = []
    for i, w in enumerate(weights):
        if i == index:
            out.append(t)
        elif rest_sum > 0.0:
            out.append(w * (1.0 - t) / rest_sum)
        else:
            out.append((1.0 - t) / (len(weights) - 1))
    return WeightVector(tuple(out))


def _sweep_setup(
    problem: DecisionProblem, attribute: str
) -> tuple[int, WeightVector, LocationMatrix]:
    index = _attribute_index(problem, attribute)
    if len(problem.attributes) < 2:
        raise ValueError("nothing to rescale: sweeping requires at least two attributes")
    weights = weights_from_importance([a.importance for a in problem.attributes])
    return index, weights, build_location_matrix(problem)


def sweep_weight(
    problem: DecisionProblem, attribute: str, samples: int
) -> list[tuple[float, Ranking]]:
    """Rank the options at ``samples`` evenly spaced swept-weight values."""
    if samples < 2:
        raise ValueError("samples must be at least 2")
    index, weights, locations = _sweep_setup(problem, attribute)
    names = [o.name for o in problem.options]
    out: list[tuple[float, Ranking]] = []
    for i in range(samples):
        t = i / (samples - 1)
        utilities = utilities_for_weights(problem, locations, reweighted(weights, index, t))
        out.append((t, rank_utilities(names, utilities)))
    return out


def _argmax(utilities: list[float]) -> int:
    best = 0
    for i in range(1, len(utilities)):
        if utilities[i] > utilities[best]:
            best = i
    return best


def critical_weights(problem: DecisionProblem, attribute: str) -> AttributeSensitivity:
    """Exact swept-weight breakpoints where the top-ranked option changes.

    Only valid where utilities are affine in t: additive aggregation and
    single-scenario options. Candidate t values come from pairwise
    intersections of the per-option utility lines; a candidate is kept only
    if the overall winner actually changes across it. Breakpoints within
    1e-9 of an endpoint are dropped.
    """
    if problem.aggregation is not Aggregation.ADDITIVE:
        raise ValueError("unsupported: use sweep_weight (multiplicative aggregation)")
    if any(len(o.scenarios) > 1 for o in problem.options):
        raise ValueError("unsupported: use sweep_weight (multi-scenario options)")
    index, weights, locations = _sweep_setup(problem, attribute)
    names = [o.name for o in problem.options]

    at_zero = utilities_for_weights(problem, locations, reweighted(weights, index, 0.0))
    at_one = utilities_for_weights(problem, locations, reweighted(weights, index, 1.0))
    intercepts = at_zero
    slopes = [u1 - u0 for u0, u1 in zip(at_zero, at_one)]

    candidates: list[float] = []
    n = len(names)
    for k in range(n):
        for j in range(k + 1, n):
            dm = slopes[k] - slopes[j]
            if dm == 0.0:
                continue  # parallel lines never swap
            t = (intercepts[j] - intercepts[k]) / dm
            if ENDPOINT_EPS < t < 1.0 - ENDPOINT_EPS:
                candidates.append(t)
    candidates.sort()
    deduped: list[float] = []
    for t in candidates:
        if not deduped or t - deduped[-1] > 1e-12:
            deduped.append(t)

    # Winner per segment, sampled at segment midpoints.
    bounds = [0.0] + deduped + [1.0]
    winners: list[int] = []
    for lo, hi in zip(bounds, bounds[1:]):
        mid = (lo + hi) / 2.0
        winners.append(_argmax([b + m * mid for b, m in zip(intercepts, slopes)]))

    breakpoints = [
        Breakpoint(t=t, left=names[w_left], right=names[w_right])
        for t, w_left, w_right in zip(deduped, winners, winners[1:])
        if w_left != w_right
    ]
    return AttributeSensitivity(
        attribute=attribute,
        top_at_zero=rank_utilities(names, at_zero).top().option,
        top_at_one=rank_utilities(names, at_one).top().option,
        breakpoints=tuple(breakpoints),
    )


def sensitivity_report(problem: DecisionProblem) -> SensitivityReport:
    """Breakpoint analysis over every attribute of the problem."""
    return SensitivityReport(tuple(
        critical_weights(problem, attr.name) for attr in problem.attributes))


def apply_overrides(problem: DecisionProblem, overrides: Overrides) -> DecisionProblem:
    """Return a new problem with importances/values replaced.

    Unknown attribute or option references raise :class:`ValidationError`
    with a path naming the offending override; the baseline problem is
    never modified.
    """
    issues = []
    attr_names = set(problem.attribute_names())
    option_names = {o.name for o in problem.options}
    for name in overrides.importances:
        if name not in attr_names:
            issues.append(Issue(Severity.ERROR, f"overrides.importances.{name}",
                                f"unknown attribute {name!r}"))
    for oname, per_attr in overrides.values.items():
        if oname not in option_names:
            issues.append(Issue(Severity.ERROR, f"overrides.values.{oname}",
                                f"unknown option {oname!r}"))
            continue
        for aname in per_attr:
            if aname not in attr_names:
                issues.append(Issue(Severity.ERROR, f"overrides.values.{oname}.{aname}",
                                    f"unknown attribute {aname!r}"))
    if issues:
        raise ValidationError(ValidationReport(tuple(issues)), "override")

    attributes = tuple(
        replace(a, importance=float(overrides.importances.get(a.name, a.importance)))
        for a in problem.attributes)
    options = []
    for option in problem.options:
        changes = overrides.values.get(option.name)
        if not changes:
            options.append(option)
            continue
        scenarios = tuple(
            replace(s, values={**s.values, **{k: float(v) for k, v in changes.items()}})
            for s in option.scenarios)
        options.append(replace(option, scenarios=scenarios))
    return replace(problem, attributes=attributes, options=tuple(options))


def what_if(problem: DecisionProblem, overrides: Overrides) -> WhatIfDelta:
    """Evaluate the problem before and after overrides and diff the results."""
    modified = apply_overrides(problem, overrides)
    require_valid(modified, "override")

    before = evaluate_problem(problem)
    after = evaluate_problem(modified)
    before_ranking = rank_options(before)
    after_ranking = rank_options(after)
    rank_before = {e.option: e.rank for e in before_ranking.entries}
    rank_after = {e.option: e.rank for e in after_ranking.entries}
    deltas = tuple(
        OptionDelta(
            option=b.name,
            utility_before=b.utility,
            utility_after=a.utility,
            delta=a.utility - b.utility,
            rank_before=rank_before[b.name],
            rank_after=rank_after[a.name],
        )
        for b, a in zip(before.options, after.options)
    )
    return WhatIfDelta(
        overrides=overrides,
        before=before,
        after=after,
        before_ranking=before_ranking,
        after_ranking=after_ranking,
        deltas=deltas,
    )
