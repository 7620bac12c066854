"""Report rendering: one artifact a team can put on the meeting screen.

All formats are produced from the same evaluated state and are byte
-deterministic for identical inputs. Markdown is the human form, with
values at each parameter's display precision and thin-space thousands
grouping; CSV and JSON carry the raw IEEE-754 numbers so downstream
tooling never has to unformat anything.
"""

from __future__ import annotations

import csv
import io
import json

from .formula import CellStatus, EvaluationResult
from .model import Model, Parameter, ParameterKind, QualityThreshold
from .risk import DiffReport, RiskMatrix
from .triage import TriageResult
from .checklist import ChecklistReport

FORMATS = ("md", "csv", "json")


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|")


def _md_table(header: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(_md_cell(h) for h in header) + " |",
             "| " + " | ".join("---" for _ in header) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(_md_cell(c) for c in row) + " |")
    return lines


def format_threshold(threshold: QualityThreshold) -> str:
    value = threshold.value
    if value == int(value):
        text = str(int(value))
    else:
        text = repr(value)
    return f"{text} {threshold.unit}".strip()


def _split_parameters(m: Model) -> tuple[list[Parameter], list[Parameter]]:
    inputs = [p for p in m.parameters if p.kind is ParameterKind.INPUT]
    derived = [p for p in m.parameters if p.kind is ParameterKind.DERIVED]
    return inputs, derived


def _value_rows(params: list[Parameter], result: EvaluationResult) -> list[list[str]]:
    rows = []
    for p in params:
        row = [p.description or p.name]
        for scenario in result.scenarios:
            row.append(result.cells[scenario][p.name].display)
        rows.append(row)
    return rows


def _raw(value: float | None, status: CellStatus) -> str:
    if status is CellStatus.ERROR:
        return "error"
    if value is None:
        return "unknown"
    return repr(value)


def _raw_rows(params: list[Parameter], result: EvaluationResult) -> list[list[str]]:
    rows = []
    for p in params:
        row = [p.description or p.name]
        for scenario in result.scenarios:
            cell = result.cells[scenario][p.name]
            row.append(_raw(cell.value, cell.status))
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Markdown

def _render_md(m: Model, result: EvaluationResult, risk: RiskMatrix,
               triage_result: TriageResult) -> str:
    lines: list[str] = [f"# {m.meta.name}", ""]
    thresholds = {op.name: op.quality_threshold for op in m.operations}

    lines += ["## Triage", ""]
    if triage_result.rows:
        rows = [
            [row.operation, row.load.value, row.work.value,
             format_threshold(thresholds[row.operation]), row.final.value]
            for row in triage_result.rows
        ]
        lines += _md_table(["Operation", "Load", "Work", "Quality threshold", "Final"], rows)
    else:
        lines.append("_No operations._")
    lines.append("")

    inputs, derived = _split_parameters(m)
    scenario_header = ["Description"] + list(result.scenarios)
    lines += ["## Input parameters", ""]
    if inputs:
        lines += _md_table(scenario_header, _value_rows(inputs, result))
    else:
        lines.append("_No input parameters._")
    lines.append("")

    lines += ["## Derived parameters", ""]
    if derived:
        lines += _md_table(scenario_header, _value_rows(derived, result))
    else:
        lines.append("_No derived parameters._")
    lines.append("")

    lines += ["## Risk", ""]
    if risk.operations:
        rows = [
            [op] + [risk.cells[op][scenario].level.value for scenario in risk.scenarios]
            for op in risk.operations
        ]
        lines += _md_table(["Operation"] + list(risk.scenarios), rows)
    else:
        lines.append("_No operations._")
    lines.append("")

    if m.notes:
        lines += ["## Notes", "", m.notes, ""]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# CSV (RFC 4180: CRLF records, quoting as needed)

def _render_csv(m: Model, result: EvaluationResult, risk: RiskMatrix,
                triage_result: TriageResult) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    thresholds = {op.name: op.quality_threshold for op in m.operations}

    writer.writerow(["Triage"])
    writer.writerow(["Operation", "Load", "Work", "Quality threshold", "Final"])
    for row in triage_result.rows:
        writer.writerow([row.operation, row.load.value, row.work.value,
                         format_threshold(thresholds[row.operation]), row.final.value])
    writer.writerow([])

    inputs, derived = _split_parameters(m)
    for title, params in (("Input parameters", inputs), ("Derived parameters", derived)):
        writer.writerow([title])
        writer.writerow(["Description"] + list(result.scenarios))
        for raw_row in _raw_rows(params, result):
            writer.writerow(raw_row)
        writer.writerow([])

    writer.writerow(["Risk"])
    writer.writerow(["Operation"] + list(risk.scenarios))
    for op in risk.operations:
        writer.writerow([op] + [risk.cells[op][scenario].level.value
                                for scenario in risk.scenarios])
    if m.notes:
        writer.writerow([])
        writer.writerow(["Notes"])
        writer.writerow([m.notes])
    return out.getvalue()


# ---------------------------------------------------------------------------
# JSON

def _render_json(m: Model, result: EvaluationResult, risk: RiskMatrix,
                 triage_result: TriageResult) -> str:
    payload = {
        "meta": {"name": m.meta.name, "version": m.meta.version,
                 "revision": m.meta.revision},
        "triage": triage_result.to_payload(),
        "evaluation": result.to_payload(),
        "risk": risk.to_payload(),
        "notes": m.notes,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_report(m: Model, result: EvaluationResult, risk: RiskMatrix,
                  triage_result: TriageResult, format: str = "md") -> str:
    """Render the full report (triage, parameters, risk) in one format."""
    if format == "md":
        return _render_md(m, result, risk, triage_result)
    if format == "csv":
        return _render_csv(m, result, risk, triage_result)
    if format == "json":
        return _render_json(m, result, risk, triage_result)
    raise ValueError(f"unknown format: {format!r}")


def render_evaluation(m: Model, result: EvaluationResult, format: str = "md") -> str:
    """Render just the parameter tables of an evaluation."""
    if format == "json":
        return json.dumps(result.to_payload(), indent=2, ensure_ascii=False) + "\n"
    inputs, derived = _split_parameters(m)
    present = {name for name in result.order}
    inputs = [p for p in inputs if p.name in present]
    derived = [p for p in derived if p.name in present]
    scenario_header = ["Description"] + list(result.scenarios)
    if format == "md":
        lines: list[str] = []
        for title, params in (("## Input parameters", inputs),
                              ("## Derived parameters", derived)):
            lines += [title, ""]
            if params:
                lines += _md_table(scenario_header, _value_rows(params, result))
            else:
                lines.append("_No parameters._")
            lines.append("")
        return "\n".join(lines)
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\r\n")
        for title, params in (("Input parameters", inputs),
                              ("Derived parameters", derived)):
            writer.writerow([title])
            writer.writerow(["Description"] + list(result.scenarios))
            for row in _raw_rows(params, result):
                writer.writerow(row)
            writer.writerow([])
        return out.getvalue()
    raise ValueError(f"unknown format: {format!r}")


def render_triage(triage_result: TriageResult, format: str = "md") -> str:
    if format == "json":
        return json.dumps(triage_result.to_payload(), indent=2, ensure_ascii=False) + "\n"
    if format != "md":
        raise ValueError(f"unknown format: {format!r}")
    rows = []
    for row in triage_result.rows:
        rows.append([
            row.operation, row.load.value, row.work.value,
            "" if row.product is None else str(row.product),
            row.proposal.value, row.final.value,
            "yes" if row.override_applied else "",
        ])
    lines = _md_table(["Operation", "Load", "Work", "Product", "Proposal",
                       "Final", "Overridden"], rows) if rows else ["_No operations._"]
    counts = triage_result.counts
    lines += ["", f"critical: {counts.critical}, non-critical: {counts.non_critical},"
                  f" pending: {counts.pending}"]
    return "\n".join(lines) + "\n"


def render_checklist(report: ChecklistReport) -> str:
    rows = [[str(item.number), item.title, item.status.value, item.evidence]
            for item in report.items]
    return "\n".join(_md_table(["#", "Item", "Status", "Evidence"], rows)) + "\n"


def _diff_value(value: float | None) -> str:
    return "unknown" if value is None else format(value, "g")


def render_diff(d: DiffReport, format: str = "md") -> str:
    if format == "json":
        return json.dumps(d.to_payload(), indent=2, ensure_ascii=False) + "\n"
    if format != "md":
        raise ValueError(f"unknown format: {format!r}")
    lines = ["## Changed cells", ""]
    if d.changed:
        rows = []
        for c in d.changed:
            # the format parameter shadows the builtin here
            relative = "" if c.relative_change is None else f"{c.relative_change:+g}"
            rows.append([c.scenario, c.parameter, _diff_value(c.before),
                         _diff_value(c.after), relative])
        lines += _md_table(["Scenario", "Parameter", "Before", "After", "Relative change"],
                           rows)
    else:
        lines.append("_No cell changes._")
    lines += ["", "## Risk transitions", ""]
    if d.risk_transitions:
        rows = [[t.operation, t.scenario, t.before.value, t.after.value]
                for t in d.risk_transitions]
        lines += _md_table(["Operation", "Scenario", "Before", "After"], rows)
    else:
        lines.append("_No risk transitions._")
    lines.append("")
    return "\n".join(lines)
