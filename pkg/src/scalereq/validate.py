"""Model validation.

Produces a report rather than raising: errors are violations that make
the model unsafe to evaluate (a model is evaluable exactly when the
error list is empty), warnings flag gaps worth raising in the next
workshop but do not block anything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EvalError, ParseError
from .formula import dependency_order, parse_expr, references
from .model import (Category, Criticality, IDENTIFIER_RE, Model, OrdinalScore,
                    ParameterKind)
from .triage import TriageOutcome, propose

_DECISION_FOR = {
    Criticality.YES: TriageOutcome.CRITICAL,
    Criticality.NO: TriageOutcome.NON_CRITICAL,
}


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_payload(self) -> dict:
        return {"errors": list(self.errors), "warnings": list(self.warnings)}


def _check_category_value(category: Category, value: float) -> str | None:
    if category is Category.FRACTION and not 0.0 <= value <= 1.0:
        return f"fraction out of range [0, 1]: {value!r}"
    if category is Category.BURSTINESS and value < 1.0:
        return f"burstiness below 1: {value!r}"
    if category is Category.COUNT and value < 0.0:
        return f"count below 0: {value!r}"
    return None


def validate(m: Model) -> ValidationReport:
    errors: list[str] = []
    warnings: list[str] = []
    scenario_names = m.scenario_names()

    if m.meta.revision < 0:
        errors.append("meta.revision: must be non-negative")
    if not m.scenarios:
        errors.append("scenarios: at least one scenario is required")
    seen = set()
    for i, s in enumerate(m.scenarios):
        if not s.name:
            errors.append(f"scenarios[{i}].name: must not be empty")
        if s.name in seen:
            errors.append(f"scenarios[{i}].name: duplicate scenario name '{s.name}'")
        seen.add(s.name)
        if not s.rationale:
            errors.append(f"scenarios[{i}].rationale: every scenario needs a rationale")

    param_names = set()
    formulas_ok = True
    for i, p in enumerate(m.parameters):
        path = f"parameters[{i}]"
        if not IDENTIFIER_RE.match(p.name):
            errors.append(f"{path}.name: not a valid identifier: '{p.name}'")
        if p.name in param_names:
            errors.append(f"{path}.name: duplicate parameter name '{p.name}'")
        param_names.add(p.name)
        if p.precision < 0:
            errors.append(f"{path}.precision: must be non-negative")
        if p.kind is ParameterKind.INPUT:
            for scenario in p.values:
                if scenario not in scenario_names:
                    errors.append(f"{path}.values.{scenario}: unknown scenario")
            for scenario in scenario_names:
                if scenario not in p.values:
                    errors.append(f"{path}.values: missing value for scenario '{scenario}'"
                                  " (use \"unknown\" to record a gap)")
            for scenario, value in p.values.items():
                if value is None:
                    continue
                fault = _check_category_value(p.category, value)
                if fault:
                    errors.append(f"{path}.values.{scenario}: {fault}")
        else:
            try:
                expr = parse_expr(p.formula or "")
            except ParseError as exc:
                errors.append(f"{path}.formula: {exc}")
                formulas_ok = False
                continue
            for ref in references(expr):
                if all(q.name != ref for q in m.parameters):
                    errors.append(f"{path}.formula: unknown parameter {ref}")
                    formulas_ok = False

    if formulas_ok and len(param_names) == len(m.parameters):
        try:
            dependency_order(m)
        except EvalError as exc:
            errors.append(f"parameters: {exc}")

    used_names: set[str] = set()
    for p in m.parameters:
        if p.kind is ParameterKind.DERIVED and p.formula:
            try:
                used_names.update(references(parse_expr(p.formula)))
            except ParseError:
                pass

    op_names = set()
    for i, op in enumerate(m.operations):
        path = f"operations[{i}]"
        if not op.name:
            errors.append(f"{path}.name: must not be empty")
        if op.name in op_names:
            errors.append(f"{path}.name: duplicate operation name '{op.name}'")
        op_names.add(op.name)
        if not op.quality_threshold.value > 0:
            errors.append(f"{path}.quality_threshold.value: must be positive")
        if op.load_output is not None:
            used_names.add(op.load_output)
            if op.load_output not in param_names:
                errors.append(f"{path}.load_output: unknown parameter {op.load_output}")
        if op.capacity_bands is not None:
            bands = op.capacity_bands
            if not 0.0 <= bands.green_max <= bands.yellow_max:
                errors.append(f"{path}.capacity_bands: need 0 <= green_max <= yellow_max")
            if op.load_output is None:
                warnings.append(f"{path}.capacity_bands: bands without a load_output"
                                " are never applied")
        for scenario in op.risk_overrides:
            if scenario not in scenario_names:
                errors.append(f"{path}.risk_overrides.{scenario}: unknown scenario")
        if op.critical is not Criticality.PENDING:
            proposal = propose(op.work, op.load, m.triage_rule)
            if _DECISION_FOR[op.critical] is not proposal and op.criticality_provenance is None:
                errors.append(
                    f"{path}.criticality_provenance: decision '{op.critical.value}'"
                    f" overrides the triage proposal '{proposal.value}'"
                    " and must record who made it")
        if OrdinalScore.UNKNOWN in (op.work, op.load):
            warnings.append(f"{path}: work or load score not yet elicited")

    for i, p in enumerate(m.parameters):
        if p.kind is ParameterKind.INPUT and p.name not in used_names:
            warnings.append(f"parameters[{i}] ({p.name}): input is not referenced by any"
                            " formula or load_output")

    return ValidationReport(errors=tuple(errors), warnings=tuple(warnings))
