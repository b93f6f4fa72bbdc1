"""Error types shared across the toolkit.

Anything raised as a :class:`PscError` is a *data* problem (malformed file,
impossible request) rather than a bug; the CLI maps these to exit code 2.
"""

from __future__ import annotations


class PscError(Exception):
    """Base class for expected, user-facing failures."""


class DataError(PscError):
    """A malformed input file or an inconsistent data table.

    Carries an optional ``path`` and 1-based ``line`` so the CLI can emit
    ``file:line: message`` diagnostics.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        msg = super().__str__()
        if self.path is not None and self.line is not None:
            return f"{self.path}:{self.line}: {msg}"
        if self.path is not None:
            return f"{self.path}: {msg}"
        return msg


class InsufficientClassError(PscError):
    """A class has fewer examples than a balanced subsample needs."""

    def __init__(self, label: str, have: int, need: int):
        self.label = label
        self.have = have
        self.need = need
        super().__init__(f"class {label!r} has {have} examples, need {need}")


class BadRatiosError(PscError):
    """Split ratios are not three non-negative numbers summing to 1."""


class EmptyTrainSetError(PscError):
    """Training requested on an empty example set."""


class MissingClassError(PscError):
    """Training set does not contain every expected label."""

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"training set has no examples labeled {label!r}")


class EmptyTestSetError(PscError):
    """Evaluation requested on an empty example set."""
