"""Exact rationals in the "p/q" wire format.

Only integer and p/q literals are accepted; decimal and float notation is
rejected so that no inexact value can enter through a spec file.
"""

import re
from fractions import Fraction

from .errors import SpecValidationError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise SpecValidationError(
            f"not a rational literal: {text!r} (expected 'p/q' or an integer)"
        )
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    return str(value)
