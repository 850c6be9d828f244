"""Interval/Cantor-set/Cantorval trichotomy with re-verifiable certificates.

The decision order:

  (a) every ratio at least 1/3            -> the difference set is [-1, 1];
  (b) finitely many ratios below 1/3      -> a finite union of intervals,
      computed exactly at the depth where the construction stabilizes;
  (c) eventually every ratio below 1/3    -> a measure-zero Cantor set;
  (d) both kinds of ratio occur forever   -> if the per-depth cover equations
      hold exactly, the difference set is a Cantorval whose measure has a
      closed form; otherwise the verdict is an honest Unknown together with
      a finite-depth empirical report.

A certificate records the verdict, the rule applied, the exact witnesses,
and the input itself, so that every claim can be recomputed from scratch.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .budget import charge
from .construction import (
    THIRD,
    RatioSequence,
    cantor_approximation,
    depth_length,
    scaled_lengths,
)
from .diffsets import Code, code_str, diff_approximation, gap_bounds, validate_code
from .errors import AssumptionError, SpecValidationError
from .gapforest import (
    gap_family,
    gap_union_measure,
    gap_union_partial,
    small_ratio_indices,
    smallest_valid_base,
)
from .intervals import ClosedInterval, IntervalUnion, complement_gaps, minkowski_diff
from .rationals import format_rational, parse_rational

VERDICT_FULL = "FullInterval"
VERDICT_FINITE = "FiniteIntervalUnion"
VERDICT_CANTOR = "CantorSet"
VERDICT_CANTORVAL = "Cantorval"
VERDICT_UNKNOWN = "Unknown"

RULE_FULL = "all-ratios-at-least-one-third"
RULE_FINITE = "finitely-many-small-ratios"
RULE_CANTOR = "Kraft-generalized"
RULE_CANTORVAL = "cover-equation-system"
RULE_UNKNOWN = "no-applicable-criterion"

_VERDICTS = (VERDICT_FULL, VERDICT_FINITE, VERDICT_CANTOR, VERDICT_CANTORVAL, VERDICT_UNKNOWN)


@dataclass(frozen=True)
class ResidualEntry:
    """Exact lhs - rhs of the cover equation linking ratios at index and index+1."""

    index: int
    case: str
    value: Fraction

    def to_json(self) -> dict:
        return {"index": self.index, "case": self.case, "value": format_rational(self.value)}

    @classmethod
    def from_json(cls, data: dict) -> "ResidualEntry":
        return cls(int(data["index"]), str(data["case"]), parse_rational(data["value"]))


def equation_residuals(seq: RatioSequence, base: int | None = None) -> tuple[ResidualEntry, ...]:
    """Residuals of the cover equation system for every index beyond the base.

    The equation relating consecutive ratios (a, b) depends on which side of
    1/3 each lies: 3ab = 4a - 1 when both sit on the same side, 3ab = 5a - 2
    when a >= 1/3 > b, and 6ab = 7a - 1 when a < 1/3 <= b. Checking one full
    period past the prefix covers every consecutive pair that ever occurs.
    """
    if base is None:
        base = smallest_valid_base(seq)
    span_end = max(len(seq.prefix), base) + len(seq.period)
    entries = []
    for r in range(base + 1, span_end + 1):
        a = seq.ratio_at(r)
        b = seq.ratio_at(r + 1)
        if (a >= THIRD) == (b >= THIRD):
            case = ">=,>=" if a >= THIRD else "<,<"
            value = 3 * a * b - 4 * a + 1
        elif a >= THIRD:
            case = ">=,<"
            value = 3 * a * b - 5 * a + 2
        else:
            case = "<,>="
            value = 6 * a * b - 7 * a + 1
        entries.append(ResidualEntry(r, case, value))
    return tuple(entries)


def residuals_vanish(entries: Sequence[ResidualEntry]) -> bool:
    return all(e.value == 0 for e in entries)


def cover_offset(seq: RatioSequence, level: int, base: int = 0) -> Fraction:
    """Exact inset by which a covered gap sits inside its covering interval.

    At family level n with small-ratio depth k_n this is
    (3*d(k_n) + d(k_n - 1)) / 2.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    kn = small_ratio_indices(seq, base, level)[-1]
    return (3 * depth_length(seq, kn) + depth_length(seq, kn - 1)) / 2


def cantorval_measure(seq: RatioSequence) -> Fraction:
    """Exact measure of the difference set when the cover equations hold (base 0)."""
    if seq.ratio_at(1) <= THIRD:
        raise AssumptionError(
            f"the measure formula needs the first ratio strictly above 1/3, got {seq.ratio_at(1)}"
        )
    entries = equation_residuals(seq, 0)
    if not residuals_vanish(entries):
        bad = next(e for e in entries if e.value != 0)
        raise AssumptionError(
            f"cover equation fails at index {bad.index} (case {bad.case}): residual {bad.value}"
        )
    return 2 - gap_union_measure(seq)


@dataclass(frozen=True)
class DepthRow:
    depth: int
    measure: Fraction
    gap_count: int
    largest_gap: Fraction
    stable: bool

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "measure": format_rational(self.measure),
            "gap_count": self.gap_count,
            "largest_gap": format_rational(self.largest_gap),
            "stable": self.stable,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DepthRow":
        return cls(
            int(data["depth"]),
            parse_rational(data["measure"]),
            int(data["gap_count"]),
            parse_rational(data["largest_gap"]),
            bool(data["stable"]),
        )


def depth_report(
    seq: RatioSequence, max_depth: int, budget: int | None = None
) -> tuple[DepthRow, ...]:
    """Empirical per-depth summary of the difference-set approximations."""
    hull = ClosedInterval(Fraction(-1), Fraction(1))
    rows = []
    previous = None
    for depth in range(1, max_depth + 1):
        union = diff_approximation(seq, depth, budget)
        gaps = complement_gaps(union, hull)
        rows.append(
            DepthRow(
                depth=depth,
                measure=union.measure,
                gap_count=len(gaps),
                largest_gap=max((g.length for g in gaps), default=Fraction(0)),
                stable=union == previous,
            )
        )
        previous = union
    return tuple(rows)


@dataclass(frozen=True)
class Certificate:
    """Self-contained classification result; carries everything needed to re-verify."""

    sequence: RatioSequence
    verdict: str
    rule: str
    measure: Fraction | None = None
    base: int | None = None
    residuals: tuple[ResidualEntry, ...] | None = None
    stable_depth: int | None = None
    union: IntervalUnion | None = None
    report: tuple[DepthRow, ...] | None = None

    def to_json(self) -> dict:
        return {
            "input": {"lambda": self.sequence.to_json()},
            "verdict": self.verdict,
            "rule": self.rule,
            "measure": None if self.measure is None else format_rational(self.measure),
            "k0": self.base,
            "residuals": None
            if self.residuals is None
            else [e.to_json() for e in self.residuals],
            "stable_depth": self.stable_depth,
            "union": None if self.union is None else self.union.to_json(),
            "report": None if self.report is None else [r.to_json() for r in self.report],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        if not isinstance(data, dict) or "verdict" not in data or "input" not in data:
            raise SpecValidationError("certificate must be an object with input and verdict")
        if data["verdict"] not in _VERDICTS:
            raise SpecValidationError(f"unknown verdict: {data['verdict']!r}")
        spec = data["input"]
        if not isinstance(spec, dict) or "lambda" not in spec:
            raise SpecValidationError("certificate input must carry a lambda spec")
        seq = RatioSequence.from_json(spec["lambda"])
        measure = data.get("measure")
        residuals = data.get("residuals")
        union = data.get("union")
        report = data.get("report")
        base = data.get("k0")
        stable_depth = data.get("stable_depth")
        return cls(
            sequence=seq,
            verdict=data["verdict"],
            rule=str(data.get("rule", "")),
            measure=None if measure is None else parse_rational(measure),
            base=None if base is None else int(base),
            residuals=None
            if residuals is None
            else tuple(ResidualEntry.from_json(e) for e in residuals),
            stable_depth=None if stable_depth is None else int(stable_depth),
            union=None if union is None else IntervalUnion.from_json(union),
            report=None if report is None else tuple(DepthRow.from_json(r) for r in report),
        )


def classify(
    seq: RatioSequence,
    base: int | None = None,
    budget: int | None = None,
    report_depth: int = 6,
) -> Certificate:
    """Apply the decision order and return a certificate. Unknown is a valid outcome."""
    period_all_large = all(r >= THIRD for r in seq.period)
    period_all_small = all(r < THIRD for r in seq.period)

    if period_all_large:
        small_prefix_depths = [
            j for j in range(1, len(seq.prefix) + 1) if seq.ratio_at(j) < THIRD
        ]
        if not small_prefix_depths:
            return Certificate(
                sequence=seq, verdict=VERDICT_FULL, rule=RULE_FULL, measure=Fraction(2)
            )
        stable = max(small_prefix_depths)
        union = diff_approximation(seq, stable, budget)
        return Certificate(
            sequence=seq,
            verdict=VERDICT_FINITE,
            rule=RULE_FINITE,
            measure=union.measure,
            stable_depth=stable,
            union=union,
        )

    if period_all_small:
        # past the last large ratio every coded interval splits into three
        # strictly separated children forever, so the measure vanishes
        return Certificate(
            sequence=seq, verdict=VERDICT_CANTOR, rule=RULE_CANTOR, measure=Fraction(0)
        )

    if base is None:
        try:
            use_base = smallest_valid_base(seq)
        except AssumptionError:
            return Certificate(
                sequence=seq,
                verdict=VERDICT_UNKNOWN,
                rule=RULE_UNKNOWN,
                report=depth_report(seq, report_depth, budget),
            )
    else:
        ratio = seq.ratio_at(base + 1)
        if base < 0 or ratio <= THIRD:
            raise AssumptionError(
                f"base {base} is invalid: ratio {ratio} at depth {base + 1} "
                "must be strictly above 1/3"
            )
        use_base = base

    residuals = equation_residuals(seq, use_base)
    if residuals_vanish(residuals):
        measure = cantorval_measure(seq) if use_base == 0 else None
        return Certificate(
            sequence=seq,
            verdict=VERDICT_CANTORVAL,
            rule=RULE_CANTORVAL,
            measure=measure,
            base=use_base,
            residuals=residuals,
        )
    return Certificate(
        sequence=seq,
        verdict=VERDICT_UNKNOWN,
        rule=RULE_UNKNOWN,
        base=use_base,
        residuals=residuals,
        report=depth_report(seq, report_depth, budget),
    )


def _witness_digits(digits: Code, side: int, ks: list[int], root_len: int) -> Code:
    """Pure code construction of the covering witness for a non-family gap.

    The last movable digit of the gap's code either falls strictly between
    two small-ratio depths, in which case stepping that digit toward the gap
    and padding gives the witness directly, or it is itself a small-ratio
    depth, in which case the witness extends the parent gap's witness one
    level down. Padding puts 1 at the intermediate small-ratio depths and
    the side's extreme digit everywhere else.
    """
    kn = len(digits) + 1
    n = ks.index(kn) + 1
    if side == 0:
        movable = [j for j in range(1, kn) if digits[j - 1] > 0]
    else:
        movable = [j for j in range(1, kn) if digits[j - 1] < 2]
    last = movable[-1] if movable else 0
    if last <= root_len:
        raise ValueError("gap is a base member of the persistent family; no witness exists")
    if last in ks:
        l = ks.index(last) + 1
        parent = _witness_digits(digits[: last - 1], digits[last - 1] - 1 + side, ks, root_len)
    else:
        l = bisect_right(ks, last)
        step = -1 if side == 0 else 1
        parent = digits[: last - 1] + (digits[last - 1] + step,)
    mid = set(ks[l : n - 1])
    filler = 2 if side == 0 else 0
    tail = tuple(1 if j in mid else filler for j in range(len(parent) + 1, kn + 1))
    return parent + tail


def cover_witness(
    seq: RatioSequence, code: Sequence[int], side: int, base: int = 0, root: Sequence[int] = ()
) -> Code:
    """Code of the interval that covers a non-family gap with the exact inset."""
    digits = validate_code(code)
    root_digits = validate_code(root)
    if digits[: len(root_digits)] != root_digits:
        raise ValueError("gap code must extend the root code")
    kn = len(digits) + 1
    if seq.ratio_at(kn) >= THIRD:
        raise AssumptionError(
            f"no gap below code {code_str(digits)}: ratio at depth {kn} is not below 1/3"
        )
    ks = small_ratio_indices(seq, base, kn)
    while ks[-1] < kn:
        ks = small_ratio_indices(seq, base, len(ks) + (kn - ks[-1]))
    if kn not in ks:
        raise AssumptionError(f"depth {kn} is not a small-ratio depth beyond base {base}")
    return _witness_digits(digits, side, ks, len(root_digits))


def cover_alignment(
    seq: RatioSequence,
    level: int,
    base: int = 0,
    root: Sequence[int] = (),
    budget: int | None = None,
) -> tuple[int, list[str]]:
    """Exhaustively check one family level: every gap outside the family must
    sit inside its witness interval at exactly the cover offset.

    Returns (number of gaps checked, failure descriptions).
    """
    digits = validate_code(root)
    ks = small_ratio_indices(seq, base, level + 1)
    kn = ks[level - 1]
    charge(2 * 3 ** (kn - 1 - len(digits)), budget)
    family = gap_family(seq, digits, level, base).level(level)
    family_keys = {(g.code, g.side) for g in family}
    offset = cover_offset(seq, level + 1, base)

    dints0, denom0 = scaled_lengths(seq, kn)
    denom = lcm(denom0, offset.denominator)
    factor = denom // denom0
    dints = [x * factor for x in dints0]
    offset_int = offset.numerator * (denom // offset.denominator)
    weights = [dints[r - 1] - dints[r] for r in range(1, kn + 1)]
    d_n = dints[kn]
    d_prev = dints[kn - 1]
    root_left = -denom + sum(d * w for d, w in zip(digits, weights))

    checked = 0
    failures: list[str] = []
    for tail in itertools.product((0, 1, 2), repeat=kn - 1 - len(digits)):
        code = digits + tail
        left = root_left + sum(d * w for d, w in zip(tail, weights[len(digits) :]))
        for side in (0, 1):
            if (code, side) in family_keys:
                continue
            checked += 1
            witness = _witness_digits(code, side, ks, len(digits))
            w_left = -denom + sum(d * w for d, w in zip(witness, weights))
            w_right = w_left + 2 * d_n
            if side == 0:
                g_left = left + 2 * d_n
                g_right = left + d_prev - d_n
            else:
                g_left = left + d_prev + d_n
                g_right = left + 2 * d_prev - 2 * d_n
            aligned = g_left - w_left == offset_int or w_right - g_right == offset_int
            if not (aligned and w_left <= g_left and g_right <= w_right):
                failures.append(
                    f"gap code={code_str(code)} side={side} witness={code_str(witness)}"
                )
    return checked, failures


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _family_complement_check(
    seq: RatioSequence, levels: int, depth: int, budget: int | None
) -> Check:
    """The complement of the depth-k_N approximation must be exactly the
    family gaps of levels 1..N."""
    union = diff_approximation(seq, depth, budget)
    actual = [(g.lo, g.hi) for g in complement_gaps(union, ClosedInterval(Fraction(-1), Fraction(1)))]
    family = gap_family(seq, (), levels, 0)
    expected = sorted(
        (b.lo, b.hi)
        for _, gaps in family.levels
        for b in (gap_bounds(seq, g) for g in gaps)
    )
    ok = actual == expected
    return Check(
        "complement-equals-family",
        ok,
        f"depth {depth}: {len(actual)} complement gaps vs {len(expected)} family gaps",
    )


def verify_certificate(
    cert: Certificate, depth: int = 6, budget: int | None = None
) -> tuple[Check, ...]:
    """Recompute every claim in a certificate from scratch.

    Field-by-field comparison against a fresh classification, then
    verdict-specific geometric checks at the given depth, then the oracle
    cross-check of the coded enumeration against the pairwise product.
    """
    seq = cert.sequence
    checks: list[Check] = []

    try:
        fresh = classify(
            seq,
            base=cert.base,
            budget=budget,
            report_depth=len(cert.report) if cert.report else 6,
        )
    except (AssumptionError, SpecValidationError) as exc:
        return (Check("reclassify", False, f"classification failed: {exc}"),)

    def same(name: str, a, b) -> None:
        checks.append(Check(name, a == b, f"recomputed {a!r} vs certified {b!r}"))

    same("verdict-matches", fresh.verdict, cert.verdict)
    same("rule-matches", fresh.rule, cert.rule)
    same("measure-matches", fresh.measure, cert.measure)
    same("base-matches", fresh.base, cert.base)
    same("residuals-match", fresh.residuals, cert.residuals)
    same("stable-depth-matches", fresh.stable_depth, cert.stable_depth)
    same("union-matches", fresh.union, cert.union)
    if cert.report is not None:
        same("report-matches", fresh.report, cert.report)

    full_hull = IntervalUnion((ClosedInterval(Fraction(-1), Fraction(1)),))

    if cert.verdict == VERDICT_FULL:
        ok = all(diff_approximation(seq, d, budget) == full_hull for d in range(1, depth + 1))
        checks.append(Check("difference-set-fills-hull", ok, f"depths 1..{depth}"))
    elif cert.verdict == VERDICT_FINITE and cert.stable_depth is not None:
        stable = diff_approximation(seq, cert.stable_depth, budget)
        checks.append(
            Check("stable-union-matches", stable == cert.union, f"depth {cert.stable_depth}")
        )
        ahead = all(
            diff_approximation(seq, cert.stable_depth + extra, budget) == stable
            for extra in (1, 2)
        )
        checks.append(Check("union-stabilizes", ahead, "two depths past stabilization"))
        checks.append(
            Check("measure-is-union-measure", stable.measure == cert.measure, str(cert.measure))
        )
    elif cert.verdict == VERDICT_CANTOR:
        lo = diff_approximation(seq, depth - 1, budget).measure
        hi = diff_approximation(seq, depth, budget).measure
        checks.append(
            Check("measure-strictly-decreasing", hi < lo, f"{hi} < {lo} at depths {depth - 1},{depth}")
        )
    elif cert.verdict == VERDICT_CANTORVAL:
        entries = equation_residuals(seq, cert.base if cert.base is not None else 0)
        checks.append(Check("cover-equations-hold", residuals_vanish(entries), ""))
        if cert.base == 0:
            total = 2 - gap_union_measure(seq)
            checks.append(
                Check("closed-form-measure", total == cert.measure, f"recomputed {total}")
            )
            ks = small_ratio_indices(seq, 0, depth)
            reachable = [n for n, kn in enumerate(ks, 1) if kn <= depth]
            for n in reachable:
                partial, _ = gap_union_partial(seq, n)
                measured = diff_approximation(seq, ks[n - 1], budget).measure
                checks.append(
                    Check(
                        f"partial-measure-level-{n}",
                        measured == 2 - partial,
                        f"depth {ks[n - 1]}: {measured} vs {2 - partial}",
                    )
                )
            if reachable:
                checks.append(
                    _family_complement_check(seq, reachable[-1], ks[reachable[-1] - 1], budget)
                )

    oracle_depth = min(depth, 7)
    points = cantor_approximation(seq, oracle_depth, budget)
    oracle = minkowski_diff(points, points)
    coded = diff_approximation(seq, oracle_depth, budget)
    checks.append(
        Check("pairwise-oracle-agrees", oracle == coded, f"depth {oracle_depth}")
    )
    return tuple(checks)


def verification_passed(checks: Sequence[Check]) -> bool:
    return all(c.passed for c in checks)
