"""Utility aggregation and option ranking.

Combines a weight vector with per-attribute locations into a single
utility per option: additive (weighted arithmetic mean), multiplicative
(weighted geometric mean), and expected utility over discrete scenarios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .model import Aggregation, DecisionProblem, DisplayScale
from .scaling import LocationMatrix, WeightVector, build_location_matrix, weights_from_importance

#: Utilities closer than this are reported as tied rather than ordered.
TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class OptionEvaluation:
    """One option's scores: canonical utility plus reporting detail."""

    name: str
    utility: float                                   # canonical, in [0, 1]
    display_utility: float                           # utility or 100 * utility
    contributions: tuple[float, ...] | None          # w_i * u_i, additive mode only
    scenario_utilities: tuple[float, ...] | None     # present when scenarios > 1


@dataclass(frozen=True)
class EvaluationResult:
    problem_name: str
    display_scale: DisplayScale
    aggregation: Aggregation
    attribute_names: tuple[str, ...]
    weights: WeightVector
    options: tuple[OptionEvaluation, ...]


@dataclass(frozen=True)
class RankEntry:
    option: str
    utility: float
    rank: int
    tied: bool


@dataclass(frozen=True)
class Ranking:
    """Options ordered by utility, best first.

    Ties (within :data:`TIE_TOLERANCE`) share the smallest applicable rank
    and keep their problem order among themselves.
    """

    entries: tuple[RankEntry, ...]

    def top(self) -> RankEntry:
        return self.entries[0]


def additive_utility(weights: WeightVector, locations: Sequence[float]) -> float:
    """Weighted sum of locations: a convex combination staying in [0, 1]."""
    if len(weights) != len(locations):
        raise ValueError(f"{len(weights)} weights but {len(locations)} locations")
    return math.fsum(w * u for w, u in zip(weights, locations))


def multiplicative_utility(weights: WeightVector, locations: Sequence[float]) -> float:
    """Weighted geometric mean of locations.

    A zero-weight attribute contributes a factor of 1 even at location 0
    (the 0**0 = 1 convention), so inert attributes never annihilate.
    """
    if len(weights) != len(locations):
        raise ValueError(f"{len(weights)} weights but {len(locations)} locations")
    product = 1.0
    for w, u in zip(weights, locations):
        if w == 0.0:
            continue
        if u == 0.0:
            return 0.0
        product *= u ** w
    return product


def expected_utility(scenarios: Sequence[tuple[float, float]]) -> float:
    """Probability-weighted mean of (probability, utility) pairs."""
    if len(scenarios) == 0:
        raise ValueError("at least one scenario is required")
    for p, _ in scenarios:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    total = math.fsum(p for p, _ in scenarios)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"scenario probabilities must sum to 1 (got {total!r})")
    return math.fsum(p * u for p, u in scenarios)


def utilities_for_weights(
    problem: DecisionProblem, locations: LocationMatrix, weights: WeightVector
) -> list[float]:
    """Per-option canonical utilities under an explicit weight vector.

    This is the shared evaluation core: scenario utilities are aggregated
    per the problem's mode, then collapsed by expected utility. Summation
    order is fixed by problem order, so results are deterministic.
    """
    combine = (
        additive_utility
        if problem.aggregation is Aggregation.ADDITIVE
        else multiplicative_utility
    )
    out: list[float] = []
    for option, row in zip(problem.options, locations.rows):
        per_scenario = [combine(weights, scenario_locs) for scenario_locs in row]
        if len(per_scenario) == 1:
            out.append(per_scenario[0])
        else:
            pairs = [(s.probability, u) for s, u in zip(option.scenarios, per_scenario)]
            out.append(expected_utility(pairs))
    return out


def evaluate_problem(problem: DecisionProblem) -> EvaluationResult:
    """Score every option of a validated problem.

    Weights come from the attributes' importance scores; locations from the
    scaling layer. In additive mode each option also gets its per-attribute
    contribution breakdown (w_i * u_i, with multi-scenario locations first
    collapsed by expectation so contributions still sum to the utility).
    """
    weights = weights_from_importance([a.importance for a in problem.attributes])
    locations = build_location_matrix(problem)
    utilities = utilities_for_weights(problem, locations, weights)

    scale = 100.0 if problem.display_scale is DisplayScale.PERCENT else 1.0
    additive = problem.aggregation is Aggregation.ADDITIVE

    evaluations = []
    for option, row, utility in zip(problem.options, locations.rows, utilities):
        contributions = None
        if additive:
            expected_locs = [
                math.fsum(s.probability * locs[i] for s, locs in zip(option.scenarios, row))
                for i in range(len(weights))
            ]
            contributions = tuple(w * u for w, u in zip(weights, expected_locs))
        scenario_utilities = None
        if len(row) > 1:
            combine = additive_utility if additive else multiplicative_utility
            scenario_utilities = tuple(combine(weights, locs) for locs in row)
        evaluations.append(OptionEvaluation(
            name=option.name,
            utility=utility,
            display_utility=utility * scale,
            contributions=contributions,
            scenario_utilities=scenario_utilities,
        ))

    return EvaluationResult(
        problem_name=problem.name,
        display_scale=problem.display_scale,
        aggregation=problem.aggregation,
        attribute_names=problem.attribute_names(),
        weights=weights,
        options=tuple(evaluations),
    )


def rank_utilities(names: Sequence[str], utilities: Sequence[float]) -> Ranking:
    """Rank options by utility with tolerance-aware tie handling."""
    if len(names) == 0:
        raise ValueError("nothing to rank")
    order = sorted(range(len(names)), key=lambda i: (-utilities[i], i))

    # Group near-equal utilities: each group is anchored at its leader so a
    # chain of sub-tolerance steps cannot silently merge distinct levels.
    groups: list[list[int]] = []
    leader_utility = math.inf
    for i in order:
        if groups and leader_utility - utilities[i] <= TIE_TOLERANCE:
            groups[-1].append(i)
        else:
            groups.append([i])
            leader_utility = utilities[i]

    entries: list[RankEntry] = []
    position = 0
    for group in groups:
        rank = position + 1
        tied = len(group) > 1
        for i in sorted(group):  # problem order within a tie group
            entries.append(RankEntry(option=names[i], utility=utilities[i], rank=rank, tied=tied))
        position += len(group)
    return Ranking(tuple(entries))


def rank_options(result: EvaluationResult) -> Ranking:
    """Rank an evaluation's options, best utility first."""
    return rank_utilities(
        [o.name for o in result.options], [o.utility for o in result.options])
