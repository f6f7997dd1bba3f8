"""Exception taxonomy shared across the workbench.

Every failure mode maps to exactly one class so callers (and the CLI exit-code
logic) can dispatch on type instead of parsing messages.
"""

from __future__ import annotations


class ParseError(ValueError):
    """A file is syntactically malformed; the message carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ValueError):
    """A structural invariant is violated; the message names the broken rule."""


class UsageError(ValueError):
    """Caller asked for something contradictory or unsupported."""


class ObjectiveMismatchError(ValueError):
    """The objective's weight-sign precondition does not hold for the instance."""


class DegenerateInstanceError(ValueError):
    """The instance is too small or one-sided for the requested quantity."""


class CapacityError(RuntimeError):
    """An exhaustive step would exceed its configured size cap."""


class InternalError(RuntimeError):
    """A guaranteed-by-construction invariant failed; indicates a bug here."""
