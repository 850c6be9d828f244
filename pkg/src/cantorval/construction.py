"""Central Cantor sets driven by an eventually periodic sequence of ratios.

A RatioSequence fixes, for every depth n >= 1, the fraction ratio_at(n) of a
parent interval's length kept by each of its two children. Starting from
[0, 1], depth n leaves 2^n closed intervals of common length depth_length(n);
ratios strictly below 1/2 keep the 2^n parts strictly separated, so each
depth-n approximation is already a normalized union.

Everything is a pure function of (sequence, depth); all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .budget import charge
from .errors import SpecValidationError
from .intervals import ClosedInterval, IntervalUnion
from .rationals import format_rational, parse_rational

_HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def _coerce_entries(label: str, entries: Iterable) -> tuple[Fraction, ...]:
    out = []
    for i, value in enumerate(entries, 1):
        try:
            frac = value if isinstance(value, Fraction) else Fraction(value)
        except (ValueError, TypeError, ZeroDivisionError):
            raise SpecValidationError(f"{label} entry {i} is not a rational: {value!r}") from None
        if not 0 < frac < _HALF:
            raise SpecValidationError(
                f"{label} entry {i} is {frac}; every ratio must lie strictly between 0 and 1/2"
            )
        out.append(frac)
    return tuple(out)


@dataclass(frozen=True)
class RatioSequence:
    """Eventually periodic ratio sequence: finite prefix, then a repeating period."""

    prefix: tuple[Fraction, ...] = ()
    period: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", _coerce_entries("prefix", self.prefix))
        object.__setattr__(self, "period", _coerce_entries("period", self.period))
        if not self.period:
            raise SpecValidationError("period must contain at least one ratio")

    @classmethod
    def constant(cls, value) -> "RatioSequence":
        return cls(prefix=(), period=(value,))

    def ratio_at(self, n: int) -> Fraction:
        """The ratio applied at depth n (1-based)."""
        if n < 1:
            raise ValueError(f"depth index must be >= 1, got {n}")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.period[(n - len(self.prefix) - 1) % len(self.period)]

    @property
    def period_product(self) -> Fraction:
        prod = Fraction(1)
        for r in self.period:
            prod *= r
        return prod

    def to_json(self) -> dict:
        return {
            "prefix": [format_rational(r) for r in self.prefix],
            "period": [format_rational(r) for r in self.period],
        }

    @classmethod
    def from_json(cls, data) -> "RatioSequence":
        if not isinstance(data, dict):
            raise SpecValidationError("ratio sequence must be an object with prefix/period")
        unknown = set(data) - {"prefix", "period"}
        if unknown:
            raise SpecValidationError(f"unknown ratio sequence keys: {sorted(unknown)}")
        prefix = [parse_rational(x) for x in data.get("prefix", [])]
        period = [parse_rational(x) for x in data.get("period", [])]
        return cls(prefix=tuple(prefix), period=tuple(period))


def depth_length(seq: RatioSequence, n: int) -> Fraction:
    """Common length of the 2^n depth-n intervals (1 at depth 0)."""
    if n < 0:
        raise ValueError("depth must be >= 0")
    out = Fraction(1)
    for r in range(1, n + 1):
        out *= seq.ratio_at(r)
    return out


def length_drop(seq: RatioSequence, r: int) -> Fraction:
    """depth_length(r-1) - depth_length(r), the weight carried by digit r."""
    return depth_length(seq, r - 1) - depth_length(seq, r)


def scaled_lengths(seq: RatioSequence, n: int) -> tuple[list[int], int]:
    """Depth lengths 0..n as exact integers over one common denominator."""
    lengths = [Fraction(1)]
    for r in range(1, n + 1):
        lengths.append(lengths[-1] * seq.ratio_at(r))
    denom = lcm(*(d.denominator for d in lengths))
    return [d.numerator * (denom // d.denominator) for d in lengths], denom


def validate_bits(bits: Sequence[int]) -> tuple[int, ...]:
    code = tuple(bits)
    if any(b not in (0, 1) for b in code):
        raise ValueError(f"binary code digits must be 0 or 1: {code}")
    return code


def kept_interval(seq: RatioSequence, bits: Sequence[int]) -> ClosedInterval:
    """The depth-n interval selected by a binary code of left/right choices."""
    code = validate_bits(bits)
    lo = Fraction(0)
    for r, bit in enumerate(code, 1):
        if bit:
            lo += length_drop(seq, r)
    return ClosedInterval(lo, lo + depth_length(seq, len(code)))


def cantor_approximation(seq: RatioSequence, depth: int, budget: int | None = None) -> IntervalUnion:
    """Union of all 2^depth kept intervals, as a normalized IntervalUnion."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    charge(1 << depth, budget)
    dints, denom = scaled_lengths(seq, depth)
    lefts = [0]
    for r in range(1, depth + 1):
        w = dints[r - 1] - dints[r]
        # digit r varies fastest: lex order, which is sorted because ratios < 1/2
        lefts = [x + t for x in lefts for t in (0, w)]
    size = dints[depth]
    return IntervalUnion(
        tuple(ClosedInterval(Fraction(x, denom), Fraction(x + size, denom)) for x in lefts)
    )
