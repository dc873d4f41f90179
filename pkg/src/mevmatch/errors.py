"""Shared exception types and the validation report entry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Violation:
    """One validation finding; searcher is None for instance-level issues."""

    message: str
    searcher: Optional[int] = None

    def __str__(self) -> str:
        if self.searcher is None:
            return self.message
        return f"searcher {self.searcher}: {self.message}"


class InstanceFormatError(ValueError):
    """The document is not readable as an instance (syntax or shape)."""


class ValidationError(ValueError):
    """The document parsed but violates an instance invariant."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ModeMismatchError(ValueError):
    """Operation applied to an instance of the wrong valuation mode."""


class InfeasibleSizeError(ValueError):
    """Instance is too large for an exact-enumeration path."""


class NormalizationUndefinedError(ArithmeticError):
    """Redistribution shares are undefined because the values sum to zero."""
