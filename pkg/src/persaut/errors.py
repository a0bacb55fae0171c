"""Exception types and the non-fatal cap sentinel shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class ResourceLimitError(RuntimeError):
    """A configured search or output cap was hit (CLI exit code 3)."""

    def __init__(self, message: str, cap: int | None = None, where=None):
        super().__init__(message)
        self.cap = cap
        self.where = where


class FeatureError(ValueError):
    """A curve feature (plateau, effective length) could not be extracted."""


class NumericError(ArithmeticError):
    """Degenerate numeric data, such as a constant sample in a correlation."""

    def __init__(self, message: str, side: str | None = None):
        super().__init__(message)
        self.side = side


class ConsistencyError(AssertionError):
    """Internal invariant broken; always indicates a bug, never bad input."""


@dataclass(frozen=True)
class CapExceeded:
    """Returned instead of a result when an enumeration would exceed ``cap``.

    ``order`` is the exact size of the collection that was not enumerated.
    """

    order: int
    cap: int
