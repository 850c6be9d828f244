"""Interval budget guarding the exponential enumerations."""

from .errors import DepthBudgetError

DEFAULT_BUDGET = 1 << 20


def resolve_budget(budget: int | None) -> int:
    if budget is None:
        return DEFAULT_BUDGET
    if budget < 1:
        raise ValueError("budget must be positive")
    return budget


def charge(needed: int, budget: int | None = None) -> None:
    """Raise DepthBudgetError if an enumeration of `needed` intervals is over budget."""
    limit = resolve_budget(budget)
    if needed > limit:
        raise DepthBudgetError(needed, limit)
