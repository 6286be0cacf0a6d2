"""Utility aggregation, evaluation, and ranking."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from mauakit import (
    Attribute,
    DecisionProblem,
    OptionRecord,
    WeightVector,
    additive_utility,
    evaluate_problem,
    expected_utility,
    multiplicative_utility,
    rank_options,
    weights_from_importance,
)
from problemgen import naive_utilities, random_problem

weight_location_pairs = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(min_value=0.0, max_value=10.0), min_size=n, max_size=n)
        .filter(lambda xs: sum(xs) > 0),
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=n, max_size=n),
    )
)


class TestAdditive:
    def test_treatment_plan_a(self):
        u = additive_utility(WeightVector((0.4, 0.2, 0.2, 0.2)), [0.80, 0.70, 0.60, 0.90])
        assert u == pytest.approx(0.76, abs=1e-12)

    def test_investment_option_1(self):
        u = additive_utility(WeightVector((0.4, 0.3, 0.2, 0.1)), [0.85, 0.60, 0.70, 0.90])
        assert u == pytest.approx(0.75, abs=1e-12)

    def test_one_hot_projects(self):
        u = additive_utility(WeightVector((0.0, 1.0, 0.0)), [0.2, 0.9, 0.4])
        assert u == 0.9

    def test_smartphone_option_a(self):
        u = additive_utility(WeightVector((0.3, 0.3, 0.2, 0.2)),
                             [0.5, 0.5, 0.7778, 0.6667])
        assert u == pytest.approx(0.5889, abs=1e-4)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            additive_utility(WeightVector((0.5, 0.5)), [1.0])

    @given(weight_location_pairs)
    def test_convex_combination_bounds(self, pair):
        scores, locations = pair
        weights = weights_from_importance(scores)
        u = additive_utility(weights, locations)
        assert min(locations) - 1e-12 <= u <= max(locations) + 1e-12


class TestMultiplicative:
    def test_all_ones(self):
        assert multiplicative_utility(WeightVector((0.3, 0.7)), [1.0, 1.0]) == 1.0

    def test_zero_annihilates_when_weighted(self):
        assert multiplicative_utility(WeightVector((0.3, 0.7)), [0.0, 1.0]) == 0.0

    def test_zero_weight_is_inert_even_at_zero_location(self):
        assert multiplicative_utility(WeightVector((0.0, 1.0)), [0.0, 0.8]) == 0.8

    def test_weighted_geometric_mean(self):
        u = multiplicative_utility(WeightVector((0.6, 0.4)), [0.5, 0.8])
        assert u == pytest.approx(0.6034176336545163, abs=1e-12)

    @given(weight_location_pairs)
    def test_am_gm_inequality(self, pair):
        scores, locations = pair
        weights = weights_from_importance(scores)
        gm = multiplicative_utility(weights, locations)
        am = additive_utility(weights, locations)
        assert gm <= am + 1e-12

    def test_am_gm_equality_when_locations_equal(self):
        weights = weights_from_importance([3, 1, 2])
        gm = multiplicative_utility(weights, [0.42, 0.42, 0.42])
        am = additive_utility(weights, [0.42, 0.42, 0.42])
        assert gm == pytest.approx(am, abs=1e-12)


class TestExpected:
    def test_degenerate(self):
        assert expected_utility([(1.0, 0.73)]) == 0.73

    def test_symmetric(self):
        assert expected_utility([(0.5, 0.0), (0.5, 1.0)]) == 0.5

    def test_weighted_mean(self):
        assert expected_utility([(0.2, 0.9), (0.8, 0.5)]) == pytest.approx(0.58, abs=1e-12)

    def test_probability_sum_enforced(self):
        with pytest.raises(ValueError, match="sum to 1"):
            expected_utility([(0.5, 0.2), (0.4, 0.8)])

    def test_probability_range_enforced(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            expected_utility([(1.5, 0.2), (-0.5, 0.8)])

    @given(st.lists(st.tuples(st.floats(min_value=1e-3, max_value=1.0),
                              st.floats(min_value=0.0, max_value=1.0)),
                    min_size=1, max_size=6))
    def test_bounded_by_scenario_utilities(self, raw):
        total = sum(p for p, _ in raw)
        scenarios = [(p / total, u) for p, u in raw]
        value = expected_utility(scenarios)
        utilities = [u for _, u in scenarios]
        assert min(utilities) - 1e-12 <= value <= max(utilities) + 1e-12


class TestEvaluateProblem:
    def test_investment_options(self, investment_options):
        result = evaluate_problem(investment_options)
        utilities = {o.name: o.utility for o in result.options}
        assert utilities["Option 1"] == pytest.approx(0.75, abs=1e-9)
        assert utilities["Option 2"] == pytest.approx(0.775, abs=1e-9)
        assert utilities["Option 3"] == pytest.approx(0.71, abs=1e-9)

    def test_university_programs_recomputed_from_normalized_values(self, university_programs):
        result = evaluate_problem(university_programs)
        utilities = {o.name: o.utility for o in result.options}
        assert utilities["Program A"] == pytest.approx(0.6450, abs=1e-4)
        assert utilities["Program B"] == pytest.approx(0.5925, abs=1e-4)
        assert utilities["Program C"] == pytest.approx(0.6475, abs=1e-4)

    def test_single_cell_problem(self):
        problem = DecisionProblem(
            name="t", attributes=(Attribute("x", 1.0),),
            options=(OptionRecord.single("A", {"x": 50}),))
        result = evaluate_problem(problem)
        assert result.options[0].utility == pytest.approx(0.5, abs=1e-12)

    def test_contributions_sum_to_utility(self, treatment_plans):
        result = evaluate_problem(treatment_plans)
        for option in result.options:
            assert math.fsum(option.contributions) == pytest.approx(option.utility, abs=1e-9)

    def test_display_scale_applied(self, treatment_plans):
        result = evaluate_problem(treatment_plans)
        for option in result.options:
            assert option.display_utility == pytest.approx(option.utility * 100, abs=1e-9)

    def test_matches_naive_oracle_on_random_problems(self):
        rng = random.Random(20240801)
        for _ in range(300):
            problem = random_problem(rng, scenario_chance=0.3)
            result = evaluate_problem(problem)
            expected = naive_utilities(problem)
            for option, oracle in zip(result.options, expected):
                assert option.utility == pytest.approx(oracle, abs=1e-12)

    def test_attribute_permutation_leaves_utilities_unchanged(self):
        rng = random.Random(99)
        for _ in range(50):
            problem = random_problem(rng, n_attributes=4, scenario_chance=0.2)
            base = {o.name: o.utility for o in evaluate_problem(problem).options}
            perm = list(range(4))
            rng.shuffle(perm)
            permuted = DecisionProblem(
                name=problem.name,
                attributes=tuple(problem.attributes[i] for i in perm),
                options=problem.options,
                display_scale=problem.display_scale,
                aggregation=problem.aggregation,
            )
            shuffled = {o.name: o.utility for o in evaluate_problem(permuted).options}
            for name in base:
                assert shuffled[name] == pytest.approx(base[name], abs=1e-12)

    def test_scenario_collapse_by_expectation(self):
        from mauakit import Scenario
        problem = DecisionProblem(
            name="risky",
            attributes=(Attribute("x", 1.0), Attribute("y", 1.0)),
            options=(
                OptionRecord("A", (
                    Scenario(0.25, {"x": 100, "y": 100}),
                    Scenario(0.75, {"x": 0, "y": 0}),
                )),
            ),
        )
        result = evaluate_problem(problem)
        assert result.options[0].utility == pytest.approx(0.25, abs=1e-12)
        assert result.options[0].scenario_utilities == pytest.approx((1.0, 0.0))


class TestRanking:
    def test_treatment_plan_tie(self, treatment_plans):
        ranking = rank_options(evaluate_problem(treatment_plans))
        by_name = {e.option: e for e in ranking.entries}
        assert by_name["Plan A"].rank == 1 and by_name["Plan A"].tied
        assert by_name["Plan C"].rank == 1 and by_name["Plan C"].tied
        assert by_name["Plan B"].rank == 3 and not by_name["Plan B"].tied
        # tied options keep problem order
        assert [e.option for e in ranking.entries] == ["Plan A", "Plan C", "Plan B"]

    def test_investment_order(self, investment_options):
        ranking = rank_options(evaluate_problem(investment_options))
        assert [e.option for e in ranking.entries] == ["Option 2", "Option 1", "Option 3"]

    def test_smartphone_order(self, smartphones):
        ranking = rank_options(evaluate_problem(smartphones))
        assert [e.option for e in ranking.entries] == ["Option B", "Option A", "Option C"]

    def test_ranking_scale_invariance(self):
        rng = random.Random(4242)
        for _ in range(50):
            problem = random_problem(rng, n_attributes=3, n_options=3)
            scaled = DecisionProblem(
                name=problem.name,
                attributes=tuple(
                    Attribute(a.name, a.importance * 17.3, a.kind, a.direction,
                              a.range_low, a.range_high, a.curve)
                    for a in problem.attributes),
                options=problem.options,
                display_scale=problem.display_scale,
                aggregation=problem.aggregation,
            )
            base = rank_options(evaluate_problem(problem))
            after = rank_options(evaluate_problem(scaled))
            assert [(e.option, e.rank, e.tied) for e in base.entries] == \
                   [(e.option, e.rank, e.tied) for e in after.entries]

    def test_utilities_non_increasing(self):
        rng = random.Random(5)
        for _ in range(50):
            problem = random_problem(rng)
            ranking = rank_options(evaluate_problem(problem))
            utilities = [e.utility for e in ranking.entries]
            assert all(a >= b - 1e-9 for a, b in zip(utilities, utilities[1:]))
