"""Error types shared across the package.

Everything user-facing derives from ValueError or LookupError so calling
code can keep its exception handling coarse while tests can assert on the
specific failure class.
"""

from __future__ import annotations

from enum import Enum


class ModelSyntaxError(ValueError):
    """The model document is not well-formed JSON."""


class SchemaError(ValueError):
    """The model document is valid JSON but violates the model schema.

    The message starts with the path of the offending element, e.g.
    ``parameters[3].values: expected an object``.
    """


class ParseError(ValueError):
    """A formula does not match the expression grammar."""

    def __init__(self, offset: int, expected: str, found: str | None = None):
        self.offset = offset
        self.expected = expected
        self.found = found
        where = f"offset {offset}: expected {expected}"
        if found:
            where += f", found {found!r}"
        super().__init__(where)


class EvalErrorKind(str, Enum):
    CYCLE = "cycle"
    UNKNOWN_INPUT = "unknown_input"
    DIVISION_BY_ZERO = "division_by_zero"
    MISSING_REFERENCE = "missing_reference"


class EvalError(ValueError):
    """Evaluation of a model failed.

    ``members`` carries the parameter names on the cycle for CYCLE errors
    and is empty otherwise.
    """

    def __init__(self, kind: EvalErrorKind, message: str, members: tuple[str, ...] = ()):
        self.kind = kind
        self.members = members
        super().__init__(message)


class UnknownScenarioError(LookupError):
    """A scenario name does not exist in the model."""


class CsvError(ValueError):
    """A backlog CSV file is malformed; the message names the row."""

    def __init__(self, row: int, message: str):
        self.row = row
        super().__init__(f"row {row}: {message}")


class DegenerateSeriesError(ValueError):
    """A measurement series has zero mean, so burstiness is undefined."""


class MissingOutputError(LookupError):
    """An operation's load output is absent from the evaluation result."""


class ScenarioMismatchError(ValueError):
    """Two models being compared declare different scenario sets."""
