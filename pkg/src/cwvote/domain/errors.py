"""Error hierarchy for cwvote.

Every error carries the process exit code the CLI reports for it:
2 for usage/configuration problems, 3 for malformed data and 4 for numeric
precondition violations.
"""

from __future__ import annotations

from typing import Optional

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class CwVoteError(Exception):
    """Base exception for cwvote errors."""

    exit_code = 1

    def __init__(self, message: str, group_index: Optional[int] = None) -> None:
        if group_index is not None:
            message = f"group {group_index}: {message}"
        super().__init__(message)
        self.group_index = group_index

    def tag_group(self, group_index: int) -> CwVoteError:
        """Attach the failing group's index to this error and return it."""
        if self.group_index is None:
            self.group_index = group_index
            self.args = (f"group {group_index}: {self.args[0]}", *self.args[1:])
        return self


class DataError(CwVoteError):
    """Input data does not have the expected shape or content."""

    exit_code = EXIT_DATA


class ShapeError(DataError):
    """Group counts, sizes or column counts do not match."""


class MalformedDataError(DataError):
    """A vote entry is not exactly -1 or +1."""

    def __init__(
        self, row: int, column: int, value: object, line: Optional[int] = None
    ) -> None:
        where = f"row {row}" if line is None else f"row {row} (line {line})"
        super().__init__(f"invalid vote {value!r} at {where}, column {column} (expected -1 or 1)")
        self.row = row
        self.column = column
        self.value = value
        self.line = line


class NumericError(CwVoteError):
    """A numeric precondition was violated."""

    exit_code = EXIT_NUMERIC


class InvalidPopulationError(NumericError):
    """Population size below 2."""

    def __init__(self, N: int) -> None:
        super().__init__(f"population size must be an integer >= 2, got {N!r}")
        self.N = N


class OutOfRangeError(NumericError):
    """A value lies outside the admissible interval."""


class PreconditionError(NumericError):
    """A documented precondition (e.g. positive coupling) does not hold."""


class UnsupportedOrderError(NumericError):
    """Absolute moment order other than 1 or 3."""

    def __init__(self, order: int) -> None:
        super().__init__(f"unsupported absolute moment order {order!r} (use 1 or 3)")
        self.order = order


class InvalidSetError(NumericError):
    """A closed set passed to a tail bound contains the true parameter."""


class OracleCapError(NumericError):
    """Brute-force enumeration requested beyond its size cap."""


class ConvergenceError(NumericError):
    """Bisection could not bracket its target."""
