"""Ratio sequences and the iterated two-piece construction."""

from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from cantorval import (
    ClosedInterval,
    DepthBudgetError,
    RatioSequence,
    SpecValidationError,
    cantor_approximation,
    depth_length,
    kept_interval,
    length_drop,
    normalize,
)
from specimens import EX1, EX1_LENGTHS
from strategies import ratio_sequences


class TestRatioSequence:
    def test_rejects_out_of_range(self):
        with pytest.raises(SpecValidationError):
            RatioSequence(prefix=(), period=(F(1, 2),))
        with pytest.raises(SpecValidationError):
            RatioSequence(prefix=(F(0),), period=(F(1, 3),))
        with pytest.raises(SpecValidationError):
            RatioSequence(prefix=(), period=(F(-1, 4),))

    def test_rejects_empty_period(self):
        with pytest.raises(SpecValidationError):
            RatioSequence(prefix=(F(1, 4),), period=())

    def test_ratio_at_wraps_periodically(self):
        seq = RatioSequence(prefix=(F(1, 4),), period=(F(1, 3), F(2, 5)))
        got = [seq.ratio_at(n) for n in range(1, 7)]
        assert got == [F(1, 4), F(1, 3), F(2, 5), F(1, 3), F(2, 5), F(1, 3)]

    def test_period_product(self):
        assert EX1.period_product == F(7, 15) * F(5, 21) == F(1, 9)

    def test_constant(self):
        seq = RatioSequence.constant(F(1, 3))
        assert seq.prefix == () and seq.period == (F(1, 3),)

    def test_json_round_trip_and_unknown_keys(self):
        data = EX1.to_json()
        assert RatioSequence.from_json(data) == EX1
        with pytest.raises(SpecValidationError):
            RatioSequence.from_json({"period": ["1/3"], "extra": 1})
        with pytest.raises(SpecValidationError):
            RatioSequence.from_json({"prefix": []})


class TestLengths:
    def test_depth_lengths_match_frozen_values(self):
        for n, want in EX1_LENGTHS.items():
            assert depth_length(EX1, n) == want

    def test_length_drop_telescopes(self):
        for r in range(1, 8):
            assert length_drop(EX1, r) == depth_length(EX1, r - 1) - depth_length(EX1, r)

    def test_kept_interval_addressing(self):
        assert kept_interval(EX1, ()) == ClosedInterval(F(0), F(1))
        d1 = depth_length(EX1, 1)
        assert kept_interval(EX1, (0,)) == ClosedInterval(F(0), d1)
        assert kept_interval(EX1, (1,)) == ClosedInterval(1 - d1, F(1))
        # left endpoint is the sum of the chosen drops
        iv = kept_interval(EX1, (1, 0, 1))
        assert iv.lo == length_drop(EX1, 1) + length_drop(EX1, 3)
        assert iv.length == depth_length(EX1, 3)


class TestApproximation:
    def test_part_count_and_measure(self):
        for n in range(7):
            u = cantor_approximation(EX1, n)
            assert len(u.parts) == 2**n
            assert u.measure == 2**n * depth_length(EX1, n)

    def test_budget_enforced(self):
        with pytest.raises(DepthBudgetError):
            cantor_approximation(EX1, 12, budget=100)

    @settings(max_examples=40)
    @given(ratio_sequences(), st.integers(0, 6))
    def test_matches_brute_force_enumeration(self, seq, n):
        brute = normalize(
            kept_interval(seq, bits) for bits in product((0, 1), repeat=n)
        )
        assert cantor_approximation(seq, n) == brute

    @settings(max_examples=40)
    @given(ratio_sequences(), st.integers(0, 6))
    def test_nested_and_symmetric(self, seq, n):
        u = cantor_approximation(seq, n)
        assert u.contains(F(0)) and u.contains(F(1))
        # symmetric under x -> 1 - x
        assert u.mirror().translate(F(1)) == u
        finer = cantor_approximation(seq, n + 1)
        for p in finer.parts:
            assert u.contains(p.lo) and u.contains(p.hi)
