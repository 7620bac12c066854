"""Shared fixtures, frozen oracle values, and acceptance reporting."""

from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import pytest

import scalereq

# Expected derived values for the bundled open banking model, computed
# once by hand with plain double arithmetic in formula order (see the
# oracle in test_formula.py, which recomputes them independently).
FROZEN = {
    "realistic": {
        "c_a": 600000.0,
        "p_h": 416.6666666666667,
        "p_s": 0.6944444444444444,
        "e_t_s": 41.666666666666664,
        "e_c_s": 33.333333333333336,
        "e_s": 75.0,
    },
    "possible": {
        "c_a": 3000000.0,
        "p_h": 2777.777777777778,
        "p_s": 4.62962962962963,
        "e_t_s": 416.6666666666667,
        "e_c_s": 166.66666666666666,
        "e_s": 583.3333333333334,
    },
    "extreme": {
        "c_a": 9600000.0,
        "p_h": 10000.0,
        "p_s": 16.666666666666668,
        "e_t_s": 3200.0,
        "e_c_s": 533.3333333333334,
        "e_s": 3733.3333333333335,
    },
}

THIN_SPACE = " "

# Rendered values for the same cells at the declared precisions.
FROZEN_DISPLAY = {
    "realistic": {"c_a": "600 000", "p_h": "417", "p_s": "0.7",
                  "e_t_s": "42", "e_c_s": "33", "e_s": "75"},
    "possible": {"c_a": "3 000 000", "p_h": "2 778",
                 "p_s": "4.6", "e_t_s": "417", "e_c_s": "167",
                 "e_s": "583"},
    "extreme": {"c_a": "9 600 000", "p_h": "10 000",
                "p_s": "16.7", "e_t_s": "3 200", "e_c_s": "533",
                "e_s": "3 733"},
}


def golden_source() -> str:
    return (resources.files("scalereq") / "golden" / "open_banking.json") \
        .read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden_text() -> str:
    return golden_source()


@pytest.fixture()
def golden_model(golden_text: str) -> scalereq.Model:
    return scalereq.parse_model(golden_text)


@pytest.fixture()
def golden_path(tmp_path: Path, golden_text: str) -> Path:
    path = tmp_path / "open_banking.json"
    path.write_text(golden_text, encoding="utf-8")
    return path


def pytest_runtest_logreport(report):
    # One visible line per acceptance criterion, independent of -v.
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    if report.passed:
        outcome = "PASS"
    elif report.failed:
        outcome = "FAIL"
    else:
        outcome = "SKIP"
    name = report.nodeid.rsplit("::", 1)[-1]
    sys.stderr.write(f"acceptance: {outcome} {name}\n")
    sys.stderr.flush()
