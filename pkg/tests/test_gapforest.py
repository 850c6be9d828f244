"""Persistent gap family: recursion, counts, extremes, exact series sums."""

from fractions import Fraction as F

import pytest

from cantorval import (
    AssumptionError,
    ClosedInterval,
    GapRef,
    RatioSequence,
    complement_gaps,
    diff_approximation,
    extreme_codes,
    extreme_limits,
    first_level,
    gap_bounds,
    gap_family,
    gap_union_measure,
    gap_union_partial,
    small_index_series,
    small_ratio_indices,
    smallest_valid_base,
)
from specimens import (
    CANTOR_SMALL,
    EX1,
    EX1_EXTREME_LEFT,
    EX1_EXTREME_RIGHT,
    EX1_GAP_UNION,
    EX1_K,
    EX1_LEVEL_SIZES,
    EX1_LIMITS,
    EX1_P2,
    EX1_PARTIAL_MEASURES,
    EX1_Q2,
    EX2,
    EX2_MEASURE,
    EX3,
    EX3_MEASURE,
    FULL_TWO_FIFTHS,
)


class TestBaseAndIndices:
    def test_examples_have_base_zero(self):
        for seq in (EX1, EX2, EX3):
            assert smallest_valid_base(seq) == 0

    def test_prefixed_sequence_can_need_larger_base(self):
        seq = RatioSequence(prefix=(F(1, 4), F(1, 5)), period=EX1.period)
        assert smallest_valid_base(seq) == 2

    def test_pure_regimes_are_rejected(self):
        with pytest.raises(AssumptionError):
            smallest_valid_base(CANTOR_SMALL)
        with pytest.raises(AssumptionError):
            gap_union_measure(FULL_TWO_FIFTHS)
        with pytest.raises(AssumptionError):
            gap_union_measure(CANTOR_SMALL)

    def test_small_ratio_indices(self):
        assert small_ratio_indices(EX1, 0, 5) == [2, 4, 6, 8, 10]
        assert small_ratio_indices(EX2, 0, 4) == [3, 6, 9, 12]
        assert small_ratio_indices(EX3, 0, 6) == [2, 3, 5, 6, 8, 9]


class TestFamily:
    def test_level_sizes(self):
        family = gap_family(EX1, (), 4)
        for n, size in EX1_LEVEL_SIZES.items():
            assert len(family.level(n)) == size

    def test_codes_have_level_length_and_small_tail(self):
        family = gap_family(EX1, (), 3)
        for n in (1, 2, 3):
            for ref in family.level(n):
                assert len(ref.code) == EX1_K[n] - 1
                assert ref.side in (0, 1)

    def test_gaps_strictly_separated_and_persistent(self):
        family = gap_family(EX1, (), 3)
        bounds = sorted(
            gap_bounds(EX1, ref) for _, refs in family.levels for ref in refs
        )
        for a, b in zip(bounds, bounds[1:]):
            assert a.hi < b.lo
        # every family gap is a hole of the deepest approximation
        union = diff_approximation(EX1, EX1_K[3])
        for g in bounds:
            assert not union.intersects_open(g.lo, g.hi)

    def test_family_is_whole_complement_at_level_depths(self):
        hull = ClosedInterval(F(-1), F(1))
        for n in (1, 2, 3):
            family = gap_family(EX1, (), n)
            expected = sorted(
                (g.lo, g.hi)
                for _, refs in family.levels
                for g in (gap_bounds(EX1, ref) for ref in refs)
            )
            union = diff_approximation(EX1, EX1_K[n])
            actual = [(g.lo, g.hi) for g in complement_gaps(union, hull)]
            assert actual == expected

    def test_first_level_at_deeper_roots(self):
        assert first_level(EX1, ()) == 1
        # a root of length k_1 = 2 starts growing gaps at level 2
        assert first_level(EX1, (0, 1)) == 2

    def test_to_json_rows_sorted(self):
        family = gap_family(EX1, (), 2)
        data = family.to_json(EX1)
        for level_rows in data["levels"].values():
            los = [F(row["lo"]) for row in level_rows]
            assert los == sorted(los)


class TestExtremes:
    def test_extreme_codes(self):
        assert extreme_codes(EX1, (), 1) == ((0,), (2,))
        assert extreme_codes(EX1, (), 2) == (EX1_P2, EX1_Q2)

    def test_extreme_gap_ends_match_frozen_values(self):
        family = gap_family(EX1, (), 2)
        for n in (1, 2):
            left_code, right_code = extreme_codes(EX1, (), n)
            left, right = GapRef(left_code, 0), GapRef(right_code, 1)
            assert left in family.level(n) and right in family.level(n)
            assert gap_bounds(EX1, left).hi == EX1_EXTREME_RIGHT[n]
            assert gap_bounds(EX1, right).lo == EX1_EXTREME_LEFT[n]
            # they are the innermost gaps of their level on either side of 0
            bounds = [gap_bounds(EX1, ref) for ref in family.level(n)]
            assert gap_bounds(EX1, left) == max(
                (b for b in bounds if b.hi < 0), key=lambda b: b.hi
            )
            assert gap_bounds(EX1, right) == min(
                (b for b in bounds if b.lo > 0), key=lambda b: b.lo
            )

    def test_limits_are_exact_and_positive(self):
        lo, hi = extreme_limits(EX1, ())
        assert (lo, hi) == EX1_LIMITS
        assert lo < hi


class TestSeriesSums:
    def test_gap_union_measures(self):
        assert gap_union_measure(EX1) == EX1_GAP_UNION
        assert gap_union_measure(EX2) == 2 - EX2_MEASURE
        assert gap_union_measure(EX3) == 2 - EX3_MEASURE

    def test_partials_telescope_to_total(self):
        for n, depth_measure in EX1_PARTIAL_MEASURES.items():
            partial, remaining = gap_union_partial(EX1, n)
            assert partial == 2 - depth_measure
            assert partial + remaining == EX1_GAP_UNION

    def test_plain_tail_sum(self):
        # sum of d_{k_n - 1} - d_{k_n} over all levels: the extreme spread
        total = small_index_series(EX1, 0, 1, F(1))
        assert total == F(2, 5)

    def test_mixed_prefix_series(self):
        seq = RatioSequence(prefix=(F(2, 5), F(1, 4)), period=EX1.period)
        # head term at k_1 = 2 plus the periodic tail starting at k_2 = 4
        assert smallest_valid_base(seq) == 0
        total = small_index_series(seq, 0, 1, F(1))
        partial, remaining = gap_union_partial(seq, 3)
        assert remaining > 0
        assert partial + remaining == gap_union_measure(seq)
        assert total > 0
