"""Weight derivation, normalization, and curve shaping."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from mauakit import (
    Attribute,
    CurveShape,
    CurveSpec,
    Direction,
    Kind,
    apply_curve,
    build_location_matrix,
    group_weights,
    locate,
    normalize_value,
    weights_from_importance,
)

LINEAR = CurveSpec(CurveShape.LINEAR)
SQRT = CurveSpec(CurveShape.POWER, 0.5)
SMOOTH = CurveSpec(CurveShape.S_SHAPE)

# zero is a legal importance; positive scores stay clear of subnormal
# territory where float division degenerates
score_values = st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1e6))
scores_lists = st.lists(score_values, min_size=1, max_size=12).filter(lambda xs: sum(xs) > 0)


class TestWeights:
    def test_survey_scores(self):
        w = weights_from_importance([20, 30, 40, 50, 30, 60, 70, 20])
        assert w[0] == pytest.approx(0.0625, abs=1e-12)
        assert math.fsum(w) == pytest.approx(1.0, abs=1e-12)

    def test_uniform(self):
        assert list(weights_from_importance([1, 1, 1, 1])) == [0.25] * 4

    def test_already_normalized_passes_through(self):
        assert list(weights_from_importance([0.4, 0.2, 0.2, 0.2])) == [0.4, 0.2, 0.2, 0.2]

    def test_zero_sum_rejected(self):
        with pytest.raises(ValueError, match="no positive importance"):
            weights_from_importance([0.0, 0.0])

    def test_negative_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            weights_from_importance([1.0, -0.1])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            weights_from_importance([])

    @given(scores_lists)
    def test_simplex_and_ratio_preservation(self, scores):
        w = weights_from_importance(scores)
        assert math.fsum(w) == pytest.approx(1.0, abs=1e-9)
        assert all(0.0 <= x <= 1.0 for x in w)
        for i in range(len(scores)):
            for j in range(len(scores)):
                if scores[j] > 0:
                    assert w[i] / w[j] == pytest.approx(scores[i] / scores[j], rel=1e-9)

    @given(scores_lists, st.floats(min_value=1e-3, max_value=1e3))
    def test_positive_scaling_invariance(self, scores, c):
        base = weights_from_importance(scores)
        scaled = weights_from_importance([c * s for s in scores])
        for a, b in zip(base, scaled):
            assert a == pytest.approx(b, abs=1e-12)


class TestGroupWeights:
    def test_single_respondent_matches_individual(self):
        scores = [20, 30, 40, 50, 30, 60, 70, 20]
        assert group_weights([scores]).weights == weights_from_importance(scores).weights

    def test_symmetric_respondents(self):
        assert list(group_weights([[1, 0], [0, 1]])) == [0.5, 0.5]

    def test_mean_of_two_normalized_vectors(self):
        pooled = group_weights([
            [20, 30, 40, 50, 30, 60, 70, 20],
            [10, 10, 10, 10, 10, 10, 10, 10],
        ])
        assert pooled[0] == pytest.approx(0.09375, abs=1e-12)
        assert math.fsum(pooled) == pytest.approx(1.0, abs=1e-12)

    def test_zero_sum_respondent_tagged(self):
        with pytest.raises(ValueError, match="respondent 1"):
            group_weights([[1, 2], [0, 0]])

    def test_unequal_lengths_rejected(self):
        with pytest.raises(ValueError, match="respondent 1"):
            group_weights([[1, 2], [1, 2, 3]])


class TestNormalizeValue:
    def test_lower_better_example(self):
        value = normalize_value(30000, 20000, 50000, Direction.LOWER_BETTER)
        assert value == pytest.approx(0.6667, abs=1e-4)

    def test_higher_better_example(self):
        assert normalize_value(20, 10, 30, Direction.HIGHER_BETTER) == pytest.approx(0.5)

    def test_endpoints(self):
        assert normalize_value(10, 10, 30, Direction.HIGHER_BETTER) == 0.0
        assert normalize_value(30, 10, 30, Direction.HIGHER_BETTER) == 1.0

    def test_clamping_above(self):
        assert normalize_value(60, 10, 50, Direction.HIGHER_BETTER) == 1.0

    def test_clamping_below(self):
        assert normalize_value(-5, 10, 50, Direction.HIGHER_BETTER) == 0.0

    def test_degenerate_range_raises(self):
        with pytest.raises(ValueError, match="degenerate range"):
            normalize_value(1.0, 5.0, 5.0, Direction.HIGHER_BETTER)

    @given(
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        st.floats(min_value=1e-3, max_value=1e6),
        st.sampled_from(list(Direction)),
    )
    def test_range_and_monotonicity(self, x, low, span, direction):
        high = low + span
        value = normalize_value(x, low, high, direction)
        assert 0.0 <= value <= 1.0
        nudged = normalize_value(x + span / 7, low, high, direction)
        if direction is Direction.HIGHER_BETTER:
            assert nudged >= value
        else:
            assert nudged <= value


class TestApplyCurve:
    def test_linear_identity(self):
        assert apply_curve(0.37, LINEAR) == 0.37

    def test_sqrt_power(self):
        assert apply_curve(0.75, SQRT) == pytest.approx(0.8660, abs=1e-4)

    def test_s_shape_midpoint(self):
        assert apply_curve(0.5, SMOOTH) == pytest.approx(0.5, abs=1e-12)

    def test_s_shape_quarter(self):
        assert apply_curve(0.25, SMOOTH) == pytest.approx(0.15625, abs=1e-12)

    def test_domain_enforced(self):
        with pytest.raises(ValueError):
            apply_curve(1.001, LINEAR)
        with pytest.raises(ValueError):
            apply_curve(-0.001, SMOOTH)

    @pytest.mark.parametrize("curve", [LINEAR, SQRT, SMOOTH,
                                       CurveSpec(CurveShape.POWER, 2.0),
                                       CurveSpec(CurveShape.POWER, 3.7)])
    def test_endpoints_fixed_and_monotone_on_grid(self, curve):
        grid = [i / 200 for i in range(201)]
        values = [apply_curve(t, curve) for t in grid]
        assert values[0] == 0.0
        assert values[-1] == 1.0
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert all(0.0 <= v <= 1.0 for v in values)

    @given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
    def test_concave_dominates_linear_convex_dominated(self, t):
        assert apply_curve(t, CurveSpec(CurveShape.POWER, 0.5)) > t
        assert apply_curve(t, CurveSpec(CurveShape.POWER, 2.0)) < t


class TestLocate:
    def test_direct_divides_by_100(self):
        assert locate(80, Attribute("e", 0.4)) == 0.80

    def test_direct_out_of_scale_raises(self):
        with pytest.raises(ValueError, match=r"\[0, 100\]"):
            locate(120, Attribute("e", 0.4))

    def test_derived_linear_lower_better(self):
        attr = Attribute("tc", 0.3, kind=Kind.DERIVED, direction=Direction.LOWER_BETTER,
                         range_low=20000, range_high=50000)
        assert locate(45000, attr) == pytest.approx(0.1667, abs=1e-4)

    @pytest.mark.parametrize("curve", [None, LINEAR, SQRT, SMOOTH])
    def test_high_anchor_maps_to_one(self, curve):
        attr = Attribute("x", 1.0, kind=Kind.DERIVED, direction=Direction.HIGHER_BETTER,
                         range_low=2.0, range_high=9.0, curve=curve)
        assert locate(9.0, attr) == 1.0

    def test_mpg_cost_safety_utility_functions(self):
        mpg = Attribute("mpg", 1.0, kind=Kind.DERIVED, direction=Direction.HIGHER_BETTER,
                        range_low=15, range_high=50)
        cost = Attribute("cost", 1.0, kind=Kind.DERIVED, direction=Direction.LOWER_BETTER,
                         range_low=20000, range_high=50000, curve=SQRT)
        safety = Attribute("safety", 1.0, kind=Kind.DERIVED,
                           direction=Direction.HIGHER_BETTER, range_low=3, range_high=5)
        assert locate(32.5, mpg) == pytest.approx(0.5, abs=1e-12)
        assert locate(27500, cost) == pytest.approx(0.8660, abs=1e-4)
        assert locate(4, safety) == pytest.approx(0.5, abs=1e-12)


class TestLocationMatrix:
    def test_smartphones_first_row(self, smartphones):
        matrix = build_location_matrix(smartphones)
        row = matrix.rows[0][0]
        expected = [0.5, 0.5, 0.7778, 0.6667]
        assert all(a == pytest.approx(b, abs=1e-4) for a, b in zip(row, expected))

    def test_university_program_b_row(self, university_programs):
        matrix = build_location_matrix(university_programs)
        row = matrix.rows[1][0]
        expected = [0.8333, 0.4, 0.625, 0.375]
        assert all(a == pytest.approx(b, abs=1e-4) for a, b in zip(row, expected))

    def test_single_cell(self):
        from mauakit import DecisionProblem, OptionRecord
        problem = DecisionProblem(
            name="t", attributes=(Attribute("x", 1.0),),
            options=(OptionRecord.single("A", {"x": 100}),))
        assert build_location_matrix(problem).rows == (((1.0,),),)

    def test_everything_in_unit_interval(self):
        from problemgen import random_problem
        rng = random.Random(7)
        for _ in range(50):
            problem = random_problem(rng, scenario_chance=0.3)
            matrix = build_location_matrix(problem)
            for option_rows in matrix.rows:
                for scenario_row in option_rows:
                    assert all(0.0 <= u <= 1.0 for u in scenario_row)
