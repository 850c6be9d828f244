"""Trichotomy decisions, cover equations, witnesses, and certificates."""

import dataclasses
from fractions import Fraction as F

import pytest

from cantorval import (
    AssumptionError,
    Certificate,
    ClosedInterval,
    RatioSequence,
    VERDICT_CANTOR,
    VERDICT_CANTORVAL,
    VERDICT_FINITE,
    VERDICT_FULL,
    VERDICT_UNKNOWN,
    cantorval_measure,
    classify,
    cover_alignment,
    cover_offset,
    cover_witness,
    depth_length,
    depth_report,
    diff_approximation,
    diff_interval,
    equation_residuals,
    gap_at,
    normalize,
    residuals_vanish,
    verification_passed,
    verify_certificate,
)
from specimens import (
    CANTOR_SMALL,
    EX1,
    EX1_DELTAS,
    EX1_K,
    EX1_MEASURE,
    EX1_PERTURBED,
    EX2,
    EX2_MEASURE,
    EX3,
    EX3_MEASURE,
    FINITE,
    FINITE_MEASURE,
    FINITE_UNION,
    FULL_ALMOST_HALF,
    FULL_THIRD,
    FULL_TWO_FIFTHS,
)

MIXED_PREFIXED = RatioSequence(prefix=(F(1, 4),), period=EX1.period)


class TestResiduals:
    def test_example_residuals_vanish_with_expected_cases(self):
        entries = equation_residuals(EX1, 0)
        assert residuals_vanish(entries)
        assert [(e.index, e.case) for e in entries] == [(1, ">=,<"), (2, "<,>=")]

    def test_all_three_cases_appear_in_longer_period(self):
        entries = equation_residuals(EX2, 0)
        assert residuals_vanish(entries)
        assert {e.case for e in entries} == {">=,>=", ">=,<", "<,>="}

    def test_perturbation_breaks_the_system(self):
        entries = equation_residuals(EX1_PERTURBED, 0)
        assert not residuals_vanish(entries)
        assert any(e.value != 0 for e in entries)


class TestOffsets:
    def test_frozen_offsets(self):
        for n, want in EX1_DELTAS.items():
            assert cover_offset(EX1, n) == want

    def test_offset_consistency_line(self):
        # delta_1 + delta_2 = 4 d_2
        assert cover_offset(EX1, 1) + cover_offset(EX1, 2) == 4 * depth_length(EX1, 2) == F(4, 9)

    @pytest.mark.parametrize("seq", [EX1, EX2, EX3], ids=["ex1", "ex2", "ex3"])
    def test_three_line_system(self, seq):
        from cantorval import small_ratio_indices

        ks = [0] + small_ratio_indices(seq, 0, 7)
        for n in range(1, 7):
            delta_n = cover_offset(seq, n)
            delta_next = cover_offset(seq, n + 1)
            for r in range(ks[n - 1] + 1, ks[n]):
                assert 3 * depth_length(seq, r) - depth_length(seq, r - 1) == delta_n
            assert 4 * depth_length(seq, ks[n]) == delta_n + delta_next
            assert (
                depth_length(seq, ks[n] - 1) - depth_length(seq, ks[n])
                == delta_n - delta_next
            )


class TestClassify:
    @pytest.mark.parametrize("seq", [FULL_THIRD, FULL_TWO_FIFTHS, FULL_ALMOST_HALF])
    def test_full_interval(self, seq):
        cert = classify(seq)
        assert cert.verdict == VERDICT_FULL
        assert cert.measure == 2

    def test_finite_union(self):
        cert = classify(FINITE)
        assert cert.verdict == VERDICT_FINITE
        assert cert.stable_depth == 1
        assert cert.measure == FINITE_MEASURE
        assert cert.union is not None
        assert [(p.lo, p.hi) for p in cert.union.parts] == FINITE_UNION

    def test_cantor_set(self):
        cert = classify(CANTOR_SMALL)
        assert cert.verdict == VERDICT_CANTOR
        assert cert.measure == 0

    @pytest.mark.parametrize(
        "seq,want",
        [(EX1, EX1_MEASURE), (EX2, EX2_MEASURE), (EX3, EX3_MEASURE)],
        ids=["ex1", "ex2", "ex3"],
    )
    def test_cantorval_examples(self, seq, want):
        cert = classify(seq)
        assert cert.verdict == VERDICT_CANTORVAL
        assert cert.base == 0
        assert cert.measure == want
        assert cantorval_measure(seq) == want

    def test_unknown_when_residuals_fail(self):
        cert = classify(EX1_PERTURBED)
        assert cert.verdict == VERDICT_UNKNOWN
        assert cert.measure is None
        assert cert.report is not None and len(cert.report) > 0
        assert any(e.value != 0 for e in cert.residuals)

    def test_prefixed_cantorval_has_no_closed_form_measure(self):
        cert = classify(MIXED_PREFIXED)
        assert cert.verdict == VERDICT_CANTORVAL
        assert cert.base == 1
        assert cert.measure is None
        with pytest.raises(AssumptionError):
            cantorval_measure(MIXED_PREFIXED)

    def test_explicit_invalid_base_is_rejected(self):
        with pytest.raises(AssumptionError):
            classify(EX1, base=1)

    def test_certificate_json_round_trip(self):
        for seq in (EX1, FINITE, CANTOR_SMALL, FULL_THIRD, EX1_PERTURBED):
            cert = classify(seq)
            data = cert.to_json()
            again = Certificate.from_json(data)
            assert again == cert
            assert again.to_json() == data


class TestDepthReport:
    def test_measures_decrease_toward_limit(self):
        rows = depth_report(EX1, 6)
        measures = [row.measure for row in rows]
        assert measures[1] == F(26, 15)
        assert all(a >= b for a, b in zip(measures, measures[1:]))
        assert all(row.measure > EX1_MEASURE for row in rows)

    def test_stable_flag_for_finite_union(self):
        rows = depth_report(FINITE, 4)
        assert [row.stable for row in rows] == [False, True, True, True]


class TestWitness:
    def test_hand_checked_witness_level_one(self):
        witness = cover_witness(EX1, (1,), 0)
        assert witness == (0, 2)
        gap = gap_at(EX1, (1,), 0)
        cover = diff_interval(EX1, witness)
        assert cover.lo <= gap.lo and gap.hi <= cover.hi
        inset_left = gap.lo - cover.lo
        inset_right = cover.hi - gap.hi
        assert EX1_DELTAS[2] in (inset_left, inset_right)

    def test_hand_checked_witness_level_two(self):
        witness = cover_witness(EX1, (1, 1, 0), 0)
        assert witness == (0, 2, 2, 2)
        gap = gap_at(EX1, (1, 1, 0), 0)
        cover = diff_interval(EX1, witness)
        assert cover.lo <= gap.lo and gap.hi <= cover.hi
        assert EX1_DELTAS[3] in (gap.lo - cover.lo, cover.hi - gap.hi)

    def test_family_member_has_no_witness(self):
        with pytest.raises(ValueError):
            cover_witness(EX1, (0,), 0)

    def test_no_gap_at_large_ratio_depth(self):
        with pytest.raises(AssumptionError):
            cover_witness(EX1, (0, 1), 0)  # depth 3 has ratio 7/15

    @pytest.mark.parametrize("seq", [EX1, EX2, EX3], ids=["ex1", "ex2", "ex3"])
    def test_alignment_holds_at_first_levels(self, seq):
        for level in (1, 2):
            checked, failures = cover_alignment(seq, level)
            assert checked > 0
            assert failures == []

    def test_alignment_fails_for_perturbed_spec(self):
        checked, failures = cover_alignment(EX1_PERTURBED, 1)
        assert checked > 0
        assert failures != []


class TestVerify:
    @pytest.mark.parametrize(
        "seq",
        [EX1, EX2, FINITE, CANTOR_SMALL, FULL_TWO_FIFTHS, EX1_PERTURBED],
        ids=["ex1", "ex2", "finite", "cantor", "full", "unknown"],
    )
    def test_fresh_certificates_verify(self, seq):
        cert = classify(seq)
        checks = verify_certificate(cert, depth=6)
        assert verification_passed(checks), [c for c in checks if not c.passed]

    def test_tampered_measure_fails(self):
        cert = classify(EX1)
        bad = dataclasses.replace(cert, measure=F(7, 5))
        checks = verify_certificate(bad, depth=4)
        failed = {c.name for c in checks if not c.passed}
        assert "measure-matches" in failed and "closed-form-measure" in failed

    def test_tampered_verdict_fails(self):
        cert = classify(CANTOR_SMALL)
        bad = dataclasses.replace(cert, verdict=VERDICT_FULL)
        assert not verification_passed(verify_certificate(bad, depth=4))

    def test_tampered_union_fails(self):
        cert = classify(FINITE)
        bad = dataclasses.replace(
            cert, union=normalize([ClosedInterval(F(-1), F(1))])
        )
        assert not verification_passed(verify_certificate(bad, depth=4))
