"""Families of persistent gaps and their exact union measure.

When the ratio sequence drops below 1/3 at infinitely many depths while also
staying at or above 1/3 infinitely often, the gaps opened at the small-ratio
depths can survive every later overlap. This module enumerates the recursive
family of those candidate persistent gaps level by level, computes the two
extreme codes that bound each level, and sums the family's total length in
closed form: the terms repeat up to a fixed factor once the sequence enters
its periodic part, so the series is a finite head plus geometric tails.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .construction import THIRD, RatioSequence, depth_length
from .diffsets import Code, GapRef, code_str, diff_interval, gap_bounds, validate_code
from .errors import AssumptionError
from .rationals import format_rational

_MIXED_HYPOTHESIS = (
    "the persistent-gap analysis needs ratios below 1/3 at infinitely many depths "
    "and ratios at or above 1/3 at infinitely many depths"
)


def _require_mixed(seq: RatioSequence) -> None:
    if all(r < THIRD for r in seq.period):
        raise AssumptionError(f"every ratio is eventually below 1/3; {_MIXED_HYPOTHESIS}")
    if all(r >= THIRD for r in seq.period):
        raise AssumptionError(f"every ratio is eventually at least 1/3; {_MIXED_HYPOTHESIS}")


def _require_base(seq: RatioSequence, base: int) -> None:
    if base < 0:
        raise ValueError("base must be >= 0")
    ratio = seq.ratio_at(base + 1)
    if ratio <= THIRD:
        raise AssumptionError(
            f"base {base} is invalid: ratio {ratio} at depth {base + 1} "
            "must be strictly above 1/3"
        )


def smallest_valid_base(seq: RatioSequence) -> int:
    """Least base whose next ratio is strictly above 1/3."""
    span = len(seq.prefix) + len(seq.period)
    for base in range(span):
        if seq.ratio_at(base + 1) > THIRD:
            return base
    raise AssumptionError(
        "no valid base: no ratio anywhere in the sequence is strictly above 1/3"
    )


def small_ratio_indices(seq: RatioSequence, base: int, count: int) -> list[int]:
    """First `count` depths beyond `base` whose ratio is below 1/3, ascending."""
    _require_mixed(seq)
    _require_base(seq, base)
    out = []
    j = base + 1
    while len(out) < count:
        if seq.ratio_at(j) < THIRD:
            out.append(j)
        j += 1
    return out


def iter_small_ratio_indices(seq: RatioSequence, base: int) -> Iterator[int]:
    _require_mixed(seq)
    _require_base(seq, base)
    j = base + 1
    while True:
        if seq.ratio_at(j) < THIRD:
            yield j
        j += 1


@dataclass(frozen=True)
class SmallIndexView:
    """A validated base together with the small-ratio depths beyond it."""

    sequence: RatioSequence
    base: int

    def __post_init__(self):
        _require_mixed(self.sequence)
        _require_base(self.sequence, self.base)

    def indices(self, count: int) -> list[int]:
        return small_ratio_indices(self.sequence, self.base, count)


def first_level(seq: RatioSequence, root: Sequence[int], base: int = 0) -> int:
    """Level m of the first family generation under the root code."""
    digits = validate_code(root)
    k = len(digits)
    if k < base:
        raise AssumptionError(f"root code length {k} must be at least the base {base}")
    ks = small_ratio_indices(seq, base, 1)
    # extend until we can place k strictly below some small-ratio depth
    while ks[-1] <= k:
        ks = small_ratio_indices(seq, base, len(ks) + 1)
    return bisect_right(ks, k) + 1


def extreme_codes(
    seq: RatioSequence, root: Sequence[int], level: int, base: int = 0
) -> tuple[Code, Code]:
    """Leftmost and rightmost bounding codes at the given family level.

    The left code descends through 0-runs broken by single 1 digits at
    small-ratio depths; the right code mirrors it with 2-runs.
    """
    digits = validate_code(root)
    k = len(digits)
    m = first_level(seq, digits, base)
    if level < m:
        raise ValueError(f"level {level} is below the first family level {m}")
    ks = small_ratio_indices(seq, base, level)
    left = list(digits) + [0] * (ks[m - 1] - k - 1)
    right = list(digits) + [2] * (ks[m - 1] - k - 1)
    for l in range(m, level):
        left += [1] + [0] * (ks[l] - ks[l - 1] - 1)
        right += [1] + [2] * (ks[l] - ks[l - 1] - 1)
    return tuple(left), tuple(right)


@dataclass(frozen=True)
class GapFamily:
    """Family levels m..N of persistent-gap candidates under one root code."""

    root: Code
    base: int
    start_level: int
    levels: tuple[tuple[int, frozenset[GapRef]], ...]

    def level(self, n: int) -> frozenset[GapRef]:
        for lvl, gaps in self.levels:
            if lvl == n:
                return gaps
        raise KeyError(n)

    def all_gaps(self) -> list[tuple[int, GapRef]]:
        return [(lvl, g) for lvl, gaps in self.levels for g in sorted(gaps)]

    def to_json(self, seq: RatioSequence) -> dict:
        levels = {}
        for lvl, gaps in self.levels:
            rows = []
            for g in sorted(gaps):
                bounds = gap_bounds(seq, g)
                rows.append(
                    {
                        "code": code_str(g.code),
                        "side": g.side,
                        "lo": format_rational(bounds.lo),
                        "hi": format_rational(bounds.hi),
                    }
                )
            levels[str(lvl)] = rows
        return {"root": code_str(self.root), "k0": self.base, "levels": levels}


def gap_family(
    seq: RatioSequence, root: Sequence[int], upto: int, base: int = 0
) -> GapFamily:
    """Build family levels m..upto below the root code.

    Each level starts from the two extreme gaps of its small-ratio depth and
    adds, for every gap of every earlier level, the two gaps that flank the
    child interval sitting directly over it.
    """
    digits = validate_code(root)
    k = len(digits)
    m = first_level(seq, digits, base)
    if upto < m:
        raise ValueError(f"upto {upto} is below the first family level {m}")
    ks = small_ratio_indices(seq, base, upto)
    levels: dict[int, frozenset[GapRef]] = {}
    for n in range(m, upto + 1):
        kn = ks[n - 1]
        gaps = {
            GapRef(digits + (0,) * (kn - k - 1), 0),
            GapRef(digits + (2,) * (kn - k - 1), 1),
        }
        for l in range(m, n):
            for g in levels[l]:
                run = kn - ks[l - 1] - 1
                gaps.add(GapRef(g.code + (g.side + 1,) + (0,) * run, 0))
                gaps.add(GapRef(g.code + (g.side,) + (2,) * run, 1))
        levels[n] = frozenset(gaps)
    return GapFamily(
        root=digits,
        base=base,
        start_level=m,
        levels=tuple(sorted(levels.items())),
    )


def small_index_series(
    seq: RatioSequence, base: int, growth: int, shrink: Fraction, start: int = 1
) -> Fraction:
    """Exact sum over n >= start of growth^(n-1) * (d(k_n - 1) - shrink*d(k_n)),
    where k_n runs over the small-ratio depths beyond the base.

    Once k_n passes the prefix, consecutive blocks of terms repeat with the
    fixed factor growth^(per-period small count) * (period product), so the
    series is a finite head plus one geometric tail per block position.
    """
    _require_mixed(seq)
    _require_base(seq, base)
    prefix_len = len(seq.prefix)
    per_period = sum(1 for r in seq.period if r < THIRD)
    ratio = Fraction(growth) ** per_period * seq.period_product
    if ratio >= 1:
        raise AssumptionError(f"series does not converge: block ratio {ratio} is not below 1")

    head = Fraction(0)
    block = Fraction(0)
    block_terms = 0
    n = 0
    gpow = Fraction(1)
    d_prev = Fraction(1)
    j = 0
    while True:
        j += 1
        r = seq.ratio_at(j)
        d_here = d_prev * r
        if j > base and r < THIRD:
            n += 1
            term = gpow * (d_prev - shrink * d_here)
            gpow *= growth
            if n >= start:
                if j <= prefix_len:
                    head += term
                else:
                    block += term
                    block_terms += 1
                    if block_terms == per_period:
                        return head + block / (1 - ratio)
        d_prev = d_here


def gap_union_measure(seq: RatioSequence) -> Fraction:
    """Exact total length of the whole family under the empty root (base 0).

    Level n contributes 2*3^(n-1) disjoint gaps of common length
    d(k_n - 1) - 3*d(k_n).
    """
    _require_mixed(seq)
    _require_base(seq, 0)
    return 2 * small_index_series(seq, 0, growth=3, shrink=Fraction(3))


def gap_union_partial(seq: RatioSequence, terms: int) -> tuple[Fraction, Fraction]:
    """Partial family length over the first `terms` levels, with a certified
    bound on the omitted tail (here the bound is the exact tail)."""
    if terms < 0:
        raise ValueError("terms must be >= 0")
    total = gap_union_measure(seq)
    partial = Fraction(0)
    gpow = Fraction(2)
    d_prev = Fraction(1)
    n = 0
    j = 0
    while n < terms:
        j += 1
        r = seq.ratio_at(j)
        d_here = d_prev * r
        if r < THIRD:
            n += 1
            partial += gpow * (d_prev - 3 * d_here)
            gpow *= 3
        d_prev = d_here
    return partial, total - partial


def extreme_limits(seq: RatioSequence, root: Sequence[int], base: int = 0) -> tuple[Fraction, Fraction]:
    """Limits of the bounding gap endpoints under the root code.

    The right ends of the leftmost bounding gaps increase to the first value;
    the left ends of the rightmost bounding gaps decrease to the second. A
    strictly positive spread between them is what leaves room for a whole
    interval of the limit set inside the root's coded interval.
    """
    digits = validate_code(root)
    m = first_level(seq, digits, base)
    iv = diff_interval(seq, digits)
    spread = small_index_series(seq, base, growth=1, shrink=Fraction(1), start=m)
    return iv.lo + spread, iv.hi - spread
