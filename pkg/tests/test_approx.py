"""Dyadic staircases, summable decompositions, and projection suprema."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuntzcalc.approx import (
    PLAUSIBLE,
    REFUTED,
    DenseSubgroupSpec,
    condition_d_check,
    dyadic_below,
    first_stage,
    projection_sup_realization,
    summable_decomposition,
)
from cuntzcalc.wmodel import K0Model


def test_first_stage_waits_for_positivity():
    assert first_stage((1,)) == 1
    assert first_stage((Fraction(1, 3), 1)) == 3
    assert first_stage((4,)) == 0


def test_first_stage_rejects_bad_profiles():
    with pytest.raises(ValueError):
        first_stage(())
    with pytest.raises(ValueError):
        first_stage((1, 0))


def test_dyadic_below_formula():
    assert dyadic_below((1,), 2) == (Fraction(3, 4),)
    assert dyadic_below((Fraction(1, 3), 1), 3) == (Fraction(1, 8), Fraction(7, 8))


def test_dyadic_below_rejects_early_stages():
    with pytest.raises(ValueError):
        dyadic_below((Fraction(1, 3), 1), 2)


def test_dyadic_gap_vanishes_for_dyadic_targets():
    for i in range(1, 8):
        (g,) = dyadic_below((1,), i)
        assert 1 - g == Fraction(1, 2**i)


def positive_profiles():
    coords = st.builds(Fraction, st.integers(1, 12), st.integers(1, 8))
    return st.lists(coords, min_size=1, max_size=3).map(tuple)


class TestSummableDecomposition:
    def test_telescoping_on_the_reference_target(self):
        report = summable_decomposition((1,), 5)
        levels = [s.level for s in report.stages]
        assert levels == [
            (Fraction(1, 2),),
            (Fraction(3, 4),),
            (Fraction(7, 8),),
            (Fraction(15, 16),),
            (Fraction(31, 32),),
        ]
        assert report.increment_norm_total == Fraction(31, 32)
        assert report.final_level == (Fraction(31, 32),)

    def test_rejects_stages_before_positivity(self):
        with pytest.raises(ValueError):
            summable_decomposition((Fraction(1, 3),), 2)

    @given(positive_profiles())
    def test_invariants(self, f):
        start = first_stage(f)
        report = summable_decomposition(f, start + 5)
        prev = None
        for stage in report.stages:
            # every level is strictly positive and strictly below the target
            assert all(v > 0 for v in stage.level)
            assert all(g < v for g, v in zip(stage.level, f))
            assert stage.sup_gap <= Fraction(2, 2**stage.index)
            if prev is None:
                assert stage.increment == stage.level
            else:
                assert stage.level == tuple(
                    a + b for a, b in zip(prev, stage.increment)
                )
                step = Fraction(1, 2**stage.index)
                assert all(h >= step for h in stage.increment)
            prev = stage.level
        assert report.increment_norm_total <= max(f) + 2


class TestProjectionSupRealization:
    def test_dyadic_chain_on_the_unit_target(self):
        spec = DenseSubgroupSpec((2, 4, 8))
        stages = projection_sup_realization((1,), spec, 3)
        assert stages == (
            (Fraction(1, 2),),
            (Fraction(3, 4),),
            (Fraction(7, 8),),
        )

    def test_grid_value_steps_one_notch_down(self):
        # a coordinate already on the grid stays strictly below itself
        spec = DenseSubgroupSpec((4,))
        assert projection_sup_realization((Fraction(3, 4),), spec, 1) == (
            (Fraction(1, 2),),
        )

    def test_values_above_one_are_fine(self):
        spec = DenseSubgroupSpec((2,))
        assert projection_sup_realization((Fraction(3, 2),), spec, 1) == (
            (Fraction(1),),
        )

    def test_stage_bounds(self):
        spec = DenseSubgroupSpec((2, 4))
        with pytest.raises(ValueError):
            projection_sup_realization((1,), spec, 3)
        with pytest.raises(ValueError):
            projection_sup_realization((1,), spec, 0)

    @given(positive_profiles(), st.integers(1, 4))
    def test_invariants(self, f, depth):
        spec = DenseSubgroupSpec(tuple(3 * 2**i for i in range(depth)))
        stages = projection_sup_realization(f, spec, depth)
        prev = None
        for i, stage in enumerate(stages):
            m = spec.denominators[i]
            assert all(v * m == int(v * m) for v in stage)
            assert all(p < v for p, v in zip(stage, f))
            assert all(v - p <= Fraction(2, m) for p, v in zip(stage, f))
            if prev is not None:
                assert all(a >= b for a, b in zip(stage, prev))
            prev = stage


def test_subgroup_spec_validation():
    DenseSubgroupSpec((2, 4, 8))
    DenseSubgroupSpec((1, 5, 10))
    with pytest.raises(ValueError):
        DenseSubgroupSpec(())
    with pytest.raises(ValueError):
        DenseSubgroupSpec((2, 3))
    with pytest.raises(ValueError):
        DenseSubgroupSpec((4, 2))
    with pytest.raises(ValueError):
        DenseSubgroupSpec((0,))
    with pytest.raises(ValueError):
        DenseSubgroupSpec((2, 4), max_denominator=3)


class TestConditionD:
    def test_dyadic_chain_is_plausible_at_an_eighth(self):
        k0 = K0Model(1, ((1,),), (1,))
        spec = DenseSubgroupSpec((2, 4, 8, 16))
        assert condition_d_check(k0, spec, Fraction(1, 8)) == PLAUSIBLE

    def test_halves_alone_are_refuted_at_an_eighth(self):
        k0 = K0Model(1, ((1,),), (1,))
        spec = DenseSubgroupSpec((2,))
        assert condition_d_check(k0, spec, Fraction(1, 8)) == REFUTED

    def test_integer_grid_is_refuted_below_a_half(self):
        k0 = K0Model(1, ((1,),), (1,))
        spec = DenseSubgroupSpec((1,))
        assert condition_d_check(k0, spec, Fraction(1, 4)) == REFUTED
        assert condition_d_check(k0, spec, Fraction(1, 2)) == PLAUSIBLE

    def test_state_values_can_fill_grid_gaps(self):
        # basis states at 1/4 and 3/4 cut the byte-sized gaps of {0,1/2,1}
        k0 = K0Model(2, ((Fraction(1, 4), Fraction(3, 4)),), (1, 1))
        spec = DenseSubgroupSpec((2,))
        assert condition_d_check(k0, spec, Fraction(1, 8)) == PLAUSIBLE
        plain = K0Model(1, ((1,),), (1,))
        assert condition_d_check(plain, spec, Fraction(1, 8)) == REFUTED

    def test_eps_must_be_positive(self):
        k0 = K0Model(1, ((1,),), (1,))
        with pytest.raises(ValueError):
            condition_d_check(k0, DenseSubgroupSpec((2,)), 0)
