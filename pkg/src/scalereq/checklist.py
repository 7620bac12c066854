"""Elicitation checklist: twelve fixed questions a finished model answers.

Each item is judged mechanically from the model alone and comes back as
addressed, partial, or missing, with a one-line evidence string naming
the model elements behind the verdict. The item set and its order are
fixed; callers can rely on always receiving exactly twelve rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ParseError
from .formula import parse_expr, references
from .model import Category, Criticality, Model, OrdinalScore, ParameterKind


class ChecklistStatus(str, Enum):
    ADDRESSED = "addressed"
    PARTIAL = "partial"
    MISSING = "missing"


@dataclass(frozen=True)
class ChecklistItem:
    number: int
    title: str
    status: ChecklistStatus
    evidence: str


@dataclass(frozen=True)
class ChecklistReport:
    items: tuple[ChecklistItem, ...]

    def to_payload(self) -> dict:
        return {"items": [
            {"number": i.number, "title": i.title,
             "status": i.status.value, "evidence": i.evidence}
            for i in self.items
        ]}


TITLES = (
    "Overall business requirements",
    "Type of users",
    "Type of workload",
    "System boundary",
    "Critical operations",
    "Output load parameter",
    "Input load parameters",
    "Work",
    "Quality metric",
    "Quality thresholds",
    "Scenarios",
    "Consistency",
)

_ADDRESSED = ChecklistStatus.ADDRESSED
_PARTIAL = ChecklistStatus.PARTIAL
_MISSING = ChecklistStatus.MISSING


def _input_closure(m: Model, root: str) -> tuple[set[str], bool]:
    """Input parameters a name transitively depends on.

    Returns (input names, resolvable); resolvable goes false if a formula
    fails to parse or mentions an unknown name, in which case the closure
    is best-effort.
    """
    params = {p.name: p for p in m.parameters}
    inputs: set[str] = set()
    resolvable = True
    stack = [root]
    seen = set()
    while stack:
        name = stack.pop()
        if name in seen:
            continue
        seen.add(name)
        p = params.get(name)
        if p is None:
            resolvable = False
            continue
        if p.kind is ParameterKind.INPUT:
            inputs.add(name)
            continue
        try:
            stack.extend(references(parse_expr(p.formula or "")))
        except ParseError:
            resolvable = False
    return inputs, resolvable


def elicitation_checklist(m: Model) -> ChecklistReport:
    """Judge the twelve checklist items against a model.

    Assumes the model validates cleanly; on a broken model the verdicts
    are still computed but only as well as the data allows.
    """
    ops = m.operations
    inputs = [p for p in m.parameters if p.kind is ParameterKind.INPUT]
    rows: list[tuple[ChecklistStatus, str]] = []

    # 1. Overall business requirements: recorded free-form in the notes.
    if m.notes.strip():
        rows.append((_ADDRESSED, "model notes record the business context"))
    else:
        rows.append((_MISSING, "model notes are empty"))

    # 2. Type of users: population sizes show up as count-typed inputs.
    counts = [p.name for p in inputs if p.category is Category.COUNT]
    if counts:
        rows.append((_ADDRESSED, "count parameters size the user base: " + ", ".join(counts)))
    elif inputs:
        rows.append((_PARTIAL, "input parameters exist but none is a count"))
    else:
        rows.append((_MISSING, "no input parameters"))

    # 3. Type of workload: every operation carries a load score.
    if not ops:
        rows.append((_MISSING, "no operations"))
    else:
        unscored = [op.name for op in ops if op.load is OrdinalScore.UNKNOWN]
        if unscored:
            rows.append((_PARTIAL, "load score still unknown for: " + ", ".join(unscored)))
        else:
            rows.append((_ADDRESSED, f"all {len(ops)} operations carry a load score"))

    # 4. System boundary: the operation list is the boundary.
    if ops:
        rows.append((_ADDRESSED, f"{len(ops)} operations enumerate the service surface"))
    else:
        rows.append((_MISSING, "no operations"))

    # 5. Critical operations: triage decisions taken.
    decided = [op for op in ops if op.critical is not Criticality.PENDING]
    if not ops:
        rows.append((_MISSING, "no operations"))
    elif not decided:
        rows.append((_PARTIAL, "criticality still pending for every operation"))
    else:
        yes = sum(1 for op in decided if op.critical is Criticality.YES)
        if len(decided) == len(ops):
            rows.append((_ADDRESSED, "criticality decided for all operations"
                                     f" ({yes} critical)"))
        else:
            rows.append((_PARTIAL, f"criticality decided for {len(decided)} of"
                                   f" {len(ops)} operations"))

    # 6. Output load parameter: every critical operation points at one.
    critical = [op for op in ops if op.critical is Criticality.YES]
    bound = [op for op in ops if op.load_output is not None]
    if critical:
        unbound = [op.name for op in critical if op.load_output is None]
        if not unbound:
            rows.append((_ADDRESSED, "load output bound for every critical operation: "
                         + ", ".join(f"{op.name} -> {op.load_output}" for op in critical)))
        elif len(unbound) < len(critical):
            rows.append((_PARTIAL, "critical operations without a load output: "
                         + ", ".join(unbound)))
        else:
            rows.append((_MISSING, "no critical operation has a load output"))
    elif bound:
        rows.append((_PARTIAL, "load outputs bound but no operation is marked critical"))
    else:
        rows.append((_MISSING, "no operation names an output load parameter"))

    # 7. Input load parameters: everything feeding the load outputs is known.
    if not bound:
        rows.append((_MISSING, "no load outputs, so no input chain to check"))
    else:
        feeding: set[str] = set()
        resolvable = True
        for op in bound:
            closure, ok = _input_closure(m, op.load_output or "")
            feeding |= closure
            resolvable = resolvable and ok
        params = {p.name: p for p in m.parameters}
        gaps = sorted(
            name for name in feeding
            if any(v is None for v in params[name].values.values())
            or any(s not in params[name].values for s in m.scenario_names())
        )
        if gaps or not resolvable:
            detail = "values unknown for: " + ", ".join(gaps) if gaps else \
                "load output formulas do not resolve"
            rows.append((_PARTIAL, detail))
        else:
            rows.append((_ADDRESSED, f"{len(feeding)} inputs feed {len(bound)}"
                                     " load outputs, all values known"))

    # 8. Work: operations name the quantities that drive per-request cost.
    declaring = [op.name for op in ops if op.work_parameters]
    if not ops:
        rows.append((_MISSING, "no operations"))
    elif not declaring:
        rows.append((_PARTIAL, "operations exist but none declares work parameters"))
    else:
        rows.append((_ADDRESSED, "work parameters declared on: " + ", ".join(declaring)))

    # 9. Quality metric: named on every operation.
    if not ops:
        rows.append((_MISSING, "no operations"))
    else:
        unnamed = [op.name for op in ops if not op.quality_metric.strip()]
        if not unnamed:
            rows.append((_ADDRESSED, f"quality metric named on all {len(ops)} operations"))
        elif len(unnamed) < len(ops):
            rows.append((_PARTIAL, "quality metric missing on: " + ", ".join(unnamed)))
        else:
            rows.append((_MISSING, "no operation names a quality metric"))

    # 10. Quality thresholds: a positive bound with a unit on every operation.
    if not ops:
        rows.append((_MISSING, "no operations"))
    else:
        lacking = [op.name for op in ops
                   if not (op.quality_threshold.value > 0 and op.quality_threshold.unit.strip())]
        if not lacking:
            rows.append((_ADDRESSED, f"thresholds set on all {len(ops)} operations"))
        elif len(lacking) < len(ops):
            rows.append((_PARTIAL, "thresholds incomplete on: " + ", ".join(lacking)))
        else:
            rows.append((_MISSING, "no operation carries a usable threshold"))

    # 11. Scenarios: at least two, so the range of futures is visible.
    if len(m.scenarios) >= 2:
        rows.append((_ADDRESSED, f"{len(m.scenarios)} scenarios: "
                     + ", ".join(s.name for s in m.scenarios)))
    else:
        rows.append((_MISSING, "fewer than two scenarios"))

    # 12. Consistency: one quality metric across the operation set.
    if not ops:
        rows.append((_MISSING, "no operations"))
    else:
        metrics = {op.quality_metric for op in ops if op.quality_metric.strip()}
        if len(metrics) == 1 and all(op.quality_metric.strip() for op in ops):
            rows.append((_ADDRESSED, f"single quality metric in use: {metrics.pop()}"))
        else:
            rows.append((_PARTIAL, "operations do not share a single quality metric"))

    items = tuple(
        ChecklistItem(number=i + 1, title=TITLES[i], status=status, evidence=evidence)
        for i, (status, evidence) in enumerate(rows)
    )
    assert len(items) == 12
    return ChecklistReport(items=items)
