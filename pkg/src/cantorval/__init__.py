"""Exact arithmetic for central Cantor sets, their difference sets, and the
subsum sets of fast convergent series.

Everything is computed over rationals: constructions, gap families, the
interval-union/Cantor-set/Cantorval trichotomy, closed-form measures, and
the certificates that let every claim be re-checked from scratch.
"""

from .budget import DEFAULT_BUDGET, charge, resolve_budget
from .classify import (
    RULE_CANTOR,
    RULE_CANTORVAL,
    RULE_FINITE,
    RULE_FULL,
    RULE_UNKNOWN,
    VERDICT_CANTOR,
    VERDICT_CANTORVAL,
    VERDICT_FINITE,
    VERDICT_FULL,
    VERDICT_UNKNOWN,
    Certificate,
    Check,
    DepthRow,
    ResidualEntry,
    cantorval_measure,
    classify,
    cover_alignment,
    cover_offset,
    cover_witness,
    depth_report,
    equation_residuals,
    residuals_vanish,
    verification_passed,
    verify_certificate,
)
from .construction import (
    RatioSequence,
    cantor_approximation,
    depth_length,
    kept_interval,
    length_drop,
)
from .diffsets import (
    GapRef,
    code_str,
    diff_approximation,
    diff_interval,
    gap_at,
    gap_bounds,
    overlap_at,
    parse_code,
)
from .errors import (
    AssumptionError,
    CantorvalError,
    DepthBudgetError,
    SpecValidationError,
    VerificationError,
)
from .gapforest import (
    GapFamily,
    extreme_codes,
    extreme_limits,
    first_level,
    gap_family,
    gap_union_measure,
    gap_union_partial,
    small_index_series,
    small_ratio_indices,
    smallest_valid_base,
)
from .intervals import (
    ClosedInterval,
    IntervalUnion,
    OpenInterval,
    complement_gaps,
    measure,
    minkowski_diff,
    minkowski_sum,
    normalize,
)
from .rationals import format_rational, parse_rational
from .render import DepthStack, StackRow, ascii_depth_stack, depth_stack, svg_depth_stack
from .series import (
    DoublingPattern,
    MultigeometricForm,
    MultigeometricSeries,
    difference_measure,
    is_fast_convergent,
    kakeya_classify,
    multigeometric_form,
    ratios_from_series,
    series_from_pattern,
    series_from_ratios,
    subsum_cover,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionError",
    "CantorvalError",
    "Certificate",
    "Check",
    "ClosedInterval",
    "DEFAULT_BUDGET",
    "DepthBudgetError",
    "DepthRow",
    "DepthStack",
    "DoublingPattern",
    "GapFamily",
    "GapRef",
    "IntervalUnion",
    "MultigeometricForm",
    "MultigeometricSeries",
    "OpenInterval",
    "RatioSequence",
    "ResidualEntry",
    "RULE_CANTOR",
    "RULE_CANTORVAL",
    "RULE_FINITE",
    "RULE_FULL",
    "RULE_UNKNOWN",
    "SpecValidationError",
    "StackRow",
    "VerificationError",
    "VERDICT_CANTOR",
    "VERDICT_CANTORVAL",
    "VERDICT_FINITE",
    "VERDICT_FULL",
    "VERDICT_UNKNOWN",
    "ascii_depth_stack",
    "cantor_approximation",
    "cantorval_measure",
    "charge",
    "classify",
    "code_str",
    "complement_gaps",
    "cover_alignment",
    "cover_offset",
    "cover_witness",
    "depth_length",
    "depth_report",
    "depth_stack",
    "diff_approximation",
    "diff_interval",
    "difference_measure",
    "equation_residuals",
    "extreme_codes",
    "extreme_limits",
    "first_level",
    "format_rational",
    "gap_at",
    "gap_bounds",
    "gap_family",
    "gap_union_measure",
    "gap_union_partial",
    "is_fast_convergent",
    "kakeya_classify",
    "kept_interval",
    "length_drop",
    "measure",
    "minkowski_diff",
    "minkowski_sum",
    "multigeometric_form",
    "normalize",
    "overlap_at",
    "parse_code",
    "parse_rational",
    "ratios_from_series",
    "residuals_vanish",
    "resolve_budget",
    "series_from_pattern",
    "series_from_ratios",
    "small_index_series",
    "small_ratio_indices",
    "smallest_valid_base",
    "subsum_cover",
    "svg_depth_stack",
    "verification_passed",
    "verify_certificate",
]
