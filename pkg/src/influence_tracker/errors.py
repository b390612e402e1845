"""Exception types shared across the package.

The CLI maps these onto exit codes: dataset problems (parsing, lookups)
exit with 2, usage problems with 1, anything unexpected with 3.
"""

from __future__ import annotations


class InfluenceTrackerError(Exception):
    """Base class for all errors raised by this package."""


class EmptyWindow(InfluenceTrackerError):
    """An operation that needs at least one tweet got an empty window."""


class ClockSkew(InfluenceTrackerError):
    """A tweet in the window is newer than the evaluation instant."""


class AccountMismatch(InfluenceTrackerError):
    """Snapshot and tweet window belong to different accounts."""


class SinkOperand(InfluenceTrackerError):
    """The sink node was passed where a real account node is required."""


class DatasetError(InfluenceTrackerError):
    """Base class for dataset-file and lookup failures (CLI exit code 2)."""


class ParseError(DatasetError):
    """A dataset line could not be parsed or violates a record invariant."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class DuplicateAccount(DatasetError):
    """The same account_id appears in more than one account record."""


class DanglingReference(DatasetError):
    """A tweet references an author with no preceding account record."""


class UnknownAccount(DatasetError):
    """An account_id or handle does not resolve in the dataset."""
