"""Risk coloring of evaluated load values, and model-to-model diffing.

An operation that binds a load output and capacity bands gets a color
per scenario: green while the value stays at or under green_max, yellow
up to yellow_max, red beyond. Band edges resolve to the less severe
color. A recorded per-scenario override beats the bands. Anything else,
including unknown values, stays unassessed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingOutputError, ScenarioMismatchError
from .formula import CellStatus, EvaluationResult, evaluate_all
from .model import CapacityBands, Model, RiskLevel


@dataclass(frozen=True)
class RiskCell:
    level: RiskLevel
    basis: str | None  # "bands", "override", or None when unassessed
    value: float | None


@dataclass(frozen=True)
class RiskMatrix:
    scenarios: tuple[str, ...]
    operations: tuple[str, ...]
    cells: dict[str, dict[str, RiskCell]]  # operation -> scenario -> cell

    def cell(self, operation: str, scenario: str) -> RiskCell:
        return self.cells[operation][scenario]

    def to_payload(self) -> dict:
        return {
            "scenarios": list(self.scenarios),
            "operations": [
                {
                    "name": op,
                    "cells": {
                        scenario: {
                            "level": cell.level.value,
                            "basis": cell.basis,
                            "value": cell.value,
                        }
                        for scenario, cell in self.cells[op].items()
                    },
                }
                for op in self.operations
            ],
        }


def band_level(value: float, bands: CapacityBands) -> RiskLevel:
    if value <= bands.green_max:
        return RiskLevel.GREEN
    if value <= bands.yellow_max:
        return RiskLevel.YELLOW
    return RiskLevel.RED


def assess_risk(m: Model, result: EvaluationResult) -> RiskMatrix:
    """Color every operation under every scenario in the result.

    Raises MissingOutputError when an operation's load output is absent
    from the evaluation result (stale result passed for a newer model).
    """
    cells: dict[str, dict[str, RiskCell]] = {}
    for op in m.operations:
        row: dict[str, RiskCell] = {}
        for scenario in result.scenarios:
            value = None
            if op.load_output is not None:
                if op.load_output not in result.cells[scenario]:
                    raise MissingOutputError(
                        f"{op.name}: load output {op.load_output} is not in the"
                        " evaluation result")
                cell = result.cells[scenario][op.load_output]
                value = cell.value if cell.status is CellStatus.OK else None
            override = op.risk_overrides.get(scenario)
            if override is not None:
                row[scenario] = RiskCell(override, "override", value)
            elif op.load_output is not None and op.capacity_bands is not None \
                    and value is not None:
                row[scenario] = RiskCell(band_level(value, op.capacity_bands),
                                         "bands", value)
            else:
                row[scenario] = RiskCell(RiskLevel.UNASSESSED, None, value)
        cells[op.name] = row
    return RiskMatrix(scenarios=result.scenarios,
                      operations=tuple(op.name for op in m.operations),
                      cells=cells)


# ---------------------------------------------------------------------------
# Diffing two model states

@dataclass(frozen=True)
class ModelState:
    """A model with its evaluation and risk matrix, ready to compare."""

    model: Model
    result: EvaluationResult
    risk: RiskMatrix


def snapshot(m: Model) -> ModelState:
    result = evaluate_all(m)
    return ModelState(model=m, result=result, risk=assess_risk(m, result))


@dataclass(frozen=True)
class CellChange:
    scenario: str
    parameter: str
    before: float | None  # None encodes unknown
    after: float | None
    relative_change: float | None


@dataclass(frozen=True)
class RiskTransition:
    operation: str
    scenario: str
    before: RiskLevel
    after: RiskLevel


@dataclass(frozen=True)
class DiffReport:
    changed: tuple[CellChange, ...]
    risk_transitions: tuple[RiskTransition, ...]

    def to_payload(self) -> dict:
        return {
            "changed": [
                {"scenario": c.scenario, "parameter": c.parameter,
                 "before": c.before, "after": c.after,
                 "relative_change": c.relative_change}
                for c in self.changed
            ],
            "risk_transitions": [
                {"operation": t.operation, "scenario": t.scenario,
                 "before": t.before.value, "after": t.after.value}
                for t in self.risk_transitions
            ],
        }


def diff(a: ModelState, b: ModelState) -> DiffReport:
    """Cell-level changes from state a to state b.

    Scenario sets must match; parameters and operations may differ, in
    which case cells appearing on only one side diff against unknown.
    """
    if set(a.result.scenarios) != set(b.result.scenarios):
        raise ScenarioMismatchError(
            f"scenario sets differ: {sorted(a.result.scenarios)}"
            f" vs {sorted(b.result.scenarios)}")

    names = list(a.result.order)
    names.extend(n for n in b.result.order if n not in set(a.result.order))
    changed = []
    for scenario in a.result.scenarios:
        for name in names:
            before_cell = a.result.cells[scenario].get(name)
            after_cell = b.result.cells.get(scenario, {}).get(name)
            before = before_cell.value if before_cell is not None else None
            after = after_cell.value if after_cell is not None else None
            if before == after:
                continue
            relative = None
            if before is not None and after is not None and before != 0.0:
                relative = (after - before) / before
            changed.append(CellChange(scenario=scenario, parameter=name,
                                      before=before, after=after,
                                      relative_change=relative))

    operations = list(a.risk.operations)
    operations.extend(n for n in b.risk.operations if n not in set(a.risk.operations))
    transitions = []
    for op in operations:
        for scenario in a.result.scenarios:
            before_level = RiskLevel.UNASSESSED
            after_level = RiskLevel.UNASSESSED
            if op in a.risk.cells:
                before_level = a.risk.cells[op][scenario].level
            if op in b.risk.cells and scenario in b.risk.cells[op]:
                after_level = b.risk.cells[op][scenario].level
            if before_level is not after_level:
                transitions.append(RiskTransition(operation=op, scenario=scenario,
                                                  before=before_level, after=after_level))
    return DiffReport(changed=tuple(changed), risk_transitions=tuple(transitions))
