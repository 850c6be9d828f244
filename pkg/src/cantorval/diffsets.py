"""Ternary-coded geometry of difference sets of central Cantor sets.

Subtracting one depth-n kept interval from another depends only on the
digitwise difference of their binary codes shifted into {0,1,2}, so the
depth-n difference set is a union of 3^n coded intervals of length
2*depth_length(n) inside [-1, 1]. Each coded interval has three children
anchored at its left end, center and right end; a child step with ratio
below 1/3 opens two gaps, a step with ratio at least 1/3 leaves two
overlaps instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .budget import charge
from .construction import THIRD, RatioSequence, depth_length, length_drop, scaled_lengths
from .errors import AssumptionError
from .intervals import ClosedInterval, IntervalUnion, OpenInterval

Code = tuple[int, ...]


def validate_code(code: Sequence[int]) -> Code:
    out = tuple(code)
    if any(d not in (0, 1, 2) for d in out):
        raise ValueError(f"ternary code digits must be 0, 1 or 2: {out}")
    return out


def code_str(code: Sequence[int]) -> str:
    return "".join(str(d) for d in code)


def parse_code(text: str) -> Code:
    if not all(c in "012" for c in text):
        raise ValueError(f"ternary code string must use digits 012: {text!r}")
    return tuple(int(c) for c in text)


@dataclass(frozen=True, order=True)
class GapRef:
    """Identifier of one gap: the code it opens under and which side (0 left, 1 right)."""

    code: Code
    side: int

    def __post_init__(self):
        validate_code(self.code)
        if self.side not in (0, 1):
            raise ValueError(f"gap side must be 0 or 1, got {self.side}")


def diff_interval(seq: RatioSequence, code: Sequence[int]) -> ClosedInterval:
    """The coded interval: left endpoint -1 + sum of digit-weighted length drops."""
    digits = validate_code(code)
    n = len(digits)
    lo = Fraction(-1)
    for r, d in enumerate(digits, 1):
        if d:
            lo += d * length_drop(seq, r)
    return ClosedInterval(lo, lo + 2 * depth_length(seq, n))


def diff_approximation(seq: RatioSequence, depth: int, budget: int | None = None) -> IntervalUnion:
    """Normalized union of all 3^depth coded intervals at the given depth."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    charge(3**depth, budget)
    dints, denom = scaled_lengths(seq, depth)
    lefts = [-denom]
    for r in range(1, depth + 1):
        w = dints[r - 1] - dints[r]
        lefts = [x + t for x in lefts for t in (0, w, 2 * w)]
    # left endpoints are not monotone in code order once some ratio exceeds 1/3
    lefts.sort()
    size = 2 * dints[depth]
    merged: list[list[int]] = []
    for x in lefts:
        if merged and x <= merged[-1][1]:
            merged[-1][1] = x + size
        else:
            merged.append([x, x + size])
    return IntervalUnion(
        tuple(ClosedInterval(Fraction(lo, denom), Fraction(hi, denom)) for lo, hi in merged)
    )


def gap_at(seq: RatioSequence, code: Sequence[int], side: int) -> OpenInterval:
    """Open gap left between consecutive children; needs the next ratio below 1/3."""
    digits = validate_code(code)
    if side not in (0, 1):
        raise ValueError(f"gap side must be 0 or 1, got {side}")
    n = len(digits)
    ratio = seq.ratio_at(n + 1)
    if ratio >= THIRD:
        raise AssumptionError(
            f"no gap below code {code_str(digits) or '(empty)'}: "
            f"ratio {ratio} at depth {n + 1} is not below 1/3"
        )
    parent = diff_interval(seq, digits)
    d_next = depth_length(seq, n + 1)
    if side == 0:
        return OpenInterval(parent.lo + 2 * d_next, parent.center - d_next)
    return OpenInterval(parent.center + d_next, parent.hi - 2 * d_next)


def gap_bounds(seq: RatioSequence, ref: GapRef) -> OpenInterval:
    return gap_at(seq, ref.code, ref.side)


def overlap_at(seq: RatioSequence, code: Sequence[int], side: int) -> ClosedInterval:
    """Closed overlap of consecutive children; needs the next ratio at least 1/3."""
    digits = validate_code(code)
    if side not in (0, 1):
        raise ValueError(f"overlap side must be 0 or 1, got {side}")
    n = len(digits)
    ratio = seq.ratio_at(n + 1)
    if ratio < THIRD:
        raise AssumptionError(
            f"no overlap below code {code_str(digits) or '(empty)'}: "
            f"ratio {ratio} at depth {n + 1} is below 1/3"
        )
    parent = diff_interval(seq, digits)
    d_next = depth_length(seq, n + 1)
    if side == 0:
        return ClosedInterval(parent.center - d_next, parent.lo + 2 * d_next)
    return ClosedInterval(parent.hi - 2 * d_next, parent.center + d_next)
