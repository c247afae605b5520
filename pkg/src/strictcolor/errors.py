"""Shared error and sentinel types."""

from __future__ import annotations

from dataclasses import dataclass


class BoundExceeded(ValueError):
    """A configured search or enumeration bound was exceeded."""


@dataclass(frozen=True)
class Undetermined:
    """Explicit "we do not know" result for searches that hit a bound.

    Functions that cannot decide return this instead of guessing, so a
    caller can tell an exhausted search from a negative verdict.
    """

    reason: str
    lower_bound: int | None = None

    def __bool__(self) -> bool:  # pragma: no cover - guard against misuse
        raise TypeError("Undetermined carries no truth value; test with isinstance")
