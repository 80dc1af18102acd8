# SPDX-License-Identifier: MIT

"""Custom exception classes for domain errors."""

from __future__ import annotations

from typing import Iterable


class DomainError(Exception):
    """Base class for all domain-specific errors."""


class DataValidationError(DomainError):
    """Raised when input data fails domain validation rules.

    ``violations`` lists every failed check, one human-readable line each.
    """

    def __init__(self, violations: Iterable[str] | str, *, source: str | None = None) -> None:
        if isinstance(violations, str):
            violations = [violations]
        self.violations: list[str] = list(violations)
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(prefix + "; ".join(self.violations))


class RecordParseError(DataValidationError):
    """Raised when an interchange file is malformed."""

    def __init__(self, field: str, message: str, *, source: str | None = None) -> None:
        self.field = field
        super().__init__([f"field '{field}': {message}"], source=source)


class DataNotAvailableError(DomainError):
    """Raised when a required record, lead or artifact is missing."""


class ShapeError(DomainError):
    """Raised when tensor or layer shapes are inconsistent."""


class NonFiniteError(DomainError):
    """Raised when a loss or gradient stops being finite."""


class EmptyEnsembleError(DomainError):
    """Raised when inference is requested from an ensemble without members."""


class ConfigurationError(DomainError):
    """Raised when settings are out of range or reference missing paths."""
