"""CSV backlog ingestion."""

import pytest

from scalereq import Criticality, CsvError, OrdinalScore, ingest_backlog

GOOD = """\
name,work,load,threshold_value,threshold_unit
Payment submission,H,H,5,seconds
Statement export,L,??,30,seconds
"""


def test_rows_become_pending_operations():
    ops = ingest_backlog(GOOD)
    assert [op.name for op in ops] == ["Payment submission",
                                       "Statement export"]
    first = ops[0]
    assert first.work is OrdinalScore.HIGH
    assert first.load is OrdinalScore.HIGH
    assert first.quality_threshold.value == 5.0
    assert first.quality_threshold.unit == "seconds"
    assert first.critical is Criticality.PENDING
    assert first.load_output is None
    assert first.quality_metric == ""
    assert ops[1].load is OrdinalScore.UNKNOWN


def test_unknown_spelled_out_is_accepted():
    ops = ingest_backlog("name,work,load,threshold_value,threshold_unit\n"
                         "op,unknown,M,1,s\n")
    assert ops[0].work is OrdinalScore.UNKNOWN


def test_quoted_names_may_contain_commas():
    ops = ingest_backlog("name,work,load,threshold_value,threshold_unit\n"
                         '"Search, filtered",M,L,2,seconds\n')
    assert ops[0].name == "Search, filtered"


def test_crlf_and_blank_lines_tolerated():
    text = ("name,work,load,threshold_value,threshold_unit\r\n"
            "a,L,L,1,s\r\n"
            "\r\n"
            "b,M,M,2,s\r\n")
    assert [op.name for op in ingest_backlog(text)] == ["a", "b"]


def test_surrounding_whitespace_stripped():
    ops = ingest_backlog("name,work,load,threshold_value,threshold_unit\n"
                         " op , H , M , 1.5 , seconds \n")
    assert ops[0].name == "op"
    assert ops[0].work is OrdinalScore.HIGH
    assert ops[0].quality_threshold.value == 1.5


@pytest.mark.parametrize("text,row,fragment", [
    ("", 1, "empty file"),
    ("nope,work,load,threshold_value,threshold_unit\na,L,L,1,s\n", 1,
     "bad header"),
    ("name,work,load,threshold_value,threshold_unit\na,L,L,1\n", 2,
     "expected 5 fields"),
    ("name,work,load,threshold_value,threshold_unit\n,L,L,1,s\n", 2,
     "name must not be empty"),
    ("name,work,load,threshold_value,threshold_unit\na,XL,L,1,s\n", 2,
     "work score 'XL'"),
    ("name,work,load,threshold_value,threshold_unit\na,L,L,abc,s\n", 2,
     "not a number"),
    ("name,work,load,threshold_value,threshold_unit\na,L,L,-1,s\n", 2,
     "must be positive"),
    ("name,work,load,threshold_value,threshold_unit\na,L,L,0,s\n", 2,
     "must be positive"),
    ("name,work,load,threshold_value,threshold_unit\na,L,L,1,\n", 2,
     "unit must not be empty"),
    ("name,work,load,threshold_value,threshold_unit\na,L,L,1,s\nb,L,Z,1,s\n",
     3, "load score 'Z'"),
])
def test_malformed_rows_name_their_physical_row(text, row, fragment):
    with pytest.raises(CsvError) as exc_info:
        ingest_backlog(text)
    assert exc_info.value.row == row
    assert f"row {row}:" in str(exc_info.value)
    assert fragment in str(exc_info.value)


def test_defaults_argument_does_not_change_the_outcome():
    from scalereq import TriageRule
    assert ingest_backlog(GOOD) == ingest_backlog(
        GOOD, defaults=TriageRule(critical_min_product=1))
