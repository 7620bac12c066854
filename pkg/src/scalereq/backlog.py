"""Backlog import: seed operations from a spreadsheet export.

Expected CSV layout (RFC 4180, header row required):

    name,work,load,threshold_value,threshold_unit

Scores use the workshop scale L/M/H/VH with ?? for not-yet-scored.
Every imported operation starts with criticality pending and no load
output; those come later in the process.
"""

from __future__ import annotations

import csv
import io

from .errors import CsvError
from .model import (Criticality, Operation, OrdinalScore, QualityThreshold,
                    TriageRule)

HEADER = ("name", "work", "load", "threshold_value", "threshold_unit")

_SCORES = {
    "L": OrdinalScore.LOW,
    "M": OrdinalScore.MEDIUM,
    "H": OrdinalScore.HIGH,
    "VH": OrdinalScore.VERY_HIGH,
    "??": OrdinalScore.UNKNOWN,
    "unknown": OrdinalScore.UNKNOWN,
}


def _score(token: str, row: int, column: str) -> OrdinalScore:
    score = _SCORES.get(token.strip())
    if score is None:
        raise CsvError(row, f"unrecognized {column} score {token!r}"
                            " (expected L, M, H, VH or ??)")
    return score


def ingest_backlog(text: str, defaults: TriageRule | None = None) -> tuple[Operation, ...]:
    """Parse a backlog CSV into operations awaiting triage.

    ``defaults`` is accepted for signature stability; imported rows are
    always left pending so the rule in force at triage time decides.
    Raises CsvError naming the 1-based file row on any malformed input.
    """
    del defaults
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise CsvError(1, "empty file, expected header "
                          + ",".join(HEADER))
    if tuple(cell.strip() for cell in rows[0]) != HEADER:
        raise CsvError(1, "bad header, expected " + ",".join(HEADER))

    operations = []
    for offset, cells in enumerate(rows[1:], start=2):
        if not cells or cells == [""]:
            continue  # stray blank line
        if len(cells) != len(HEADER):
            raise CsvError(offset, f"expected {len(HEADER)} fields, got {len(cells)}")
        name, work, load, value_text, unit = (cell.strip() for cell in cells)
        if not name:
            raise CsvError(offset, "operation name must not be empty")
        try:
            value = float(value_text)
        except ValueError:
            raise CsvError(offset, f"threshold_value is not a number: {value_text!r}") \
                from None
        if not value > 0:
            raise CsvError(offset, f"threshold_value must be positive: {value_text!r}")
        if not unit:
            raise CsvError(offset, "threshold_unit must not be empty")
        operations.append(Operation(
            name=name,
            work=_score(work, offset, "work"),
            load=_score(load, offset, "load"),
            quality_metric="",
            quality_threshold=QualityThreshold(value=value, unit=unit),
            critical=Criticality.PENDING,
        ))
    return tuple(operations)
