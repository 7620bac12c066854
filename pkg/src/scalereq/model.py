"""Domain types for a scalability-requirements model, plus JSON I/O.

A model is what a team accumulates while working out how far a system
must scale: the scenarios under discussion, the input numbers gathered
from stakeholders, formulas deriving load from those numbers, and the
catalogue of operations with ordinal work/load scores.

The on-disk form is a UTF-8 JSON document with top-level keys ``meta``,
``scenarios``, ``parameters``, ``operations``, ``triage_rule`` and
``notes``. Unknown keys are rejected at every level so typos surface
immediately. Values that have not been elicited yet are written as the
string ``"unknown"``; ordinal scores use ``"??"`` for the same purpose.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path
from dataclasses import dataclass, field, replace
from datetime import date as _date
from enum import Enum
from typing import Any, Mapping

from .errors import ModelSyntaxError, SchemaError

IDENTIFIER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class OrdinalScore(str, Enum):
    """Workshop scoring scale for work and load."""

    LOW = "L"
    MEDIUM = "M"
    HIGH = "H"
    VERY_HIGH = "VH"
    UNKNOWN = "??"


class ParameterKind(str, Enum):
    INPUT = "input"
    DERIVED = "derived"


class Category(str, Enum):
    """Rough taxonomy of what a parameter measures."""

    AVERAGE = "average"
    CONSTANT = "constant"
    FRACTION = "fraction"
    BURSTINESS = "burstiness"
    COUNT = "count"
    OTHER = "other"


class Criticality(str, Enum):
    YES = "yes"
    NO = "no"
    PENDING = "pending"


class RiskLevel(str, Enum):
    GREEN = "green"
    YELLOW = "yellow"
    RED = "red"
    UNASSESSED = "unassessed"


@dataclass(frozen=True)
class Provenance:
    """Who supplied a value, when, and any caveat they attached."""

    source: str
    date: str | None = None  # ISO-8601 calendar date
    note: str = ""


@dataclass(frozen=True)
class Meta:
    name: str
    version: str
    revision: int = 0


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    rationale: str


@dataclass(frozen=True)
class Parameter:
    """A named quantity, either elicited (input) or computed (derived).

    Inputs carry one value per scenario, where ``None`` records an
    explicitly unknown value. Derived parameters carry a formula instead;
    the two are mutually exclusive.
    """

    name: str
    kind: ParameterKind
    category: Category
    unit: str
    description: str
    precision: int
    values: Mapping[str, float | None] = field(default_factory=dict)
    formula: str | None = None
    provenance: Provenance | None = None


@dataclass(frozen=True)
class WorkParameter:
    """Descriptor for a quantity that drives the cost of one request."""

    name: str
    unit: str
    description: str


@dataclass(frozen=True)
class QualityThreshold:
    value: float
    unit: str


@dataclass(frozen=True)
class CapacityBands:
    """Band edges for coloring a load value; green up to and including
    green_max, yellow up to and including yellow_max, red beyond."""

    green_max: float
    yellow_max: float


@dataclass(frozen=True)
class Operation:
    name: str
    work: OrdinalScore
    load: OrdinalScore
    quality_metric: str
    quality_threshold: QualityThreshold
    work_parameters: tuple[WorkParameter, ...] = ()
    load_output: str | None = None
    capacity_bands: CapacityBands | None = None
    critical: Criticality = Criticality.PENDING
    criticality_provenance: Provenance | None = None
    risk_overrides: Mapping[str, RiskLevel] = field(default_factory=dict)


@dataclass(frozen=True)
class TriageRule:
    critical_min_product: int = 9
    review_on_vh: bool = True


@dataclass(frozen=True)
class Model:
    meta: Meta
    scenarios: tuple[Scenario, ...]
    parameters: tuple[Parameter, ...]
    operations: tuple[Operation, ...]
    triage_rule: TriageRule = TriageRule()
    notes: str = ""

    def scenario_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.scenarios)

    def parameter(self, name: str) -> Parameter | None:
        for p in self.parameters:
            if p.name == name:
                return p
        return None

    def with_value(self, name: str, scenario: str, value: float | None,
                   provenance: Provenance | None = None) -> "Model":
        """Return a copy with one input value replaced.

        Used for what-if exploration and persisted edits; the original
        model is never mutated.
        """
        parameters = []
        for p in self.parameters:
            if p.name == name:
                values = dict(p.values)
                values[scenario] = value
                p = replace(p, values=values,
                            provenance=provenance if provenance is not None else p.provenance)
            parameters.append(p)
        return replace(self, parameters=tuple(parameters))

    def with_revision(self, revision: int) -> "Model":
        return replace(self, meta=replace(self.meta, revision=revision))


# ---------------------------------------------------------------------------
# Parsing

def _expect_object(value: Any, path: str, required: tuple[str, ...],
                   optional: tuple[str, ...] = ()) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"{path}: expected an object")
    for key in required:
        if key not in value:
            raise SchemaError(f"{path}: missing required key '{key}'")
    allowed = set(required) | set(optional)
    for key in value:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}: unknown key")
    return value


def _expect_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{path}: expected a string")
    return value


def _expect_number(value: Any, path: str) -> float:
    # bool is an int subclass; keep it out of numeric slots.
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number")
    return float(value)


def _expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}: expected an integer")
    return value


def _expect_bool(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise SchemaError(f"{path}: expected a boolean")
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"{path}: expected an array")
    return value


def _enum(cls, value: Any, path: str, aliases: Mapping[str, str] | None = None):
    text = _expect_str(value, path)
    if aliases and text in aliases:
        text = aliases[text]
    try:
        return cls(text)
    except ValueError:
        choices = ", ".join(m.value for m in cls)
        raise SchemaError(f"{path}: expected one of {choices}") from None


def _parse_provenance(raw: Any, path: str) -> Provenance:
    obj = _expect_object(raw, path, required=("source",), optional=("date", "note"))
    date = None
    if "date" in obj:
        date = _expect_str(obj["date"], f"{path}.date")
        try:
            _date.fromisoformat(date)
        except ValueError:
            raise SchemaError(f"{path}.date: expected an ISO-8601 date") from None
    note = _expect_str(obj.get("note", ""), f"{path}.note")
    return Provenance(source=_expect_str(obj["source"], f"{path}.source"),
                      date=date, note=note)


def _parse_values(raw: Any, path: str) -> dict[str, float | None]:
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: expected an object")
    values: dict[str, float | None] = {}
    for key, cell in raw.items():
        if cell == "unknown":
            values[key] = None
        else:
            values[key] = _expect_number(cell, f"{path}.{key}")
    return values


def _parse_parameter(raw: Any, path: str) -> Parameter:
    obj = _expect_object(
        raw, path,
        required=("name", "kind", "category", "unit", "description", "precision"),
        optional=("values", "formula", "provenance"),
    )
    kind = _enum(ParameterKind, obj["kind"], f"{path}.kind")
    if kind is ParameterKind.INPUT and "formula" in obj:
        raise SchemaError(f"{path}.formula: input parameters take values, not a formula")
    if kind is ParameterKind.DERIVED and "values" in obj:
        raise SchemaError(f"{path}.values: derived parameters take a formula, not values")
    if kind is ParameterKind.DERIVED and "formula" not in obj:
        raise SchemaError(f"{path}: missing required key 'formula'")
    precision = _expect_int(obj["precision"], f"{path}.precision")
    if precision < 0:
        raise SchemaError(f"{path}.precision: expected a non-negative integer")
    return Parameter(
        name=_expect_str(obj["name"], f"{path}.name"),
        kind=kind,
        category=_enum(Category, obj["category"], f"{path}.category"),
        unit=_expect_str(obj["unit"], f"{path}.unit"),
        description=_expect_str(obj["description"], f"{path}.description"),
        precision=precision,
        values=_parse_values(obj.get("values", {}), f"{path}.values"),
        formula=_expect_str(obj["formula"], f"{path}.formula") if "formula" in obj else None,
        provenance=_parse_provenance(obj["provenance"], f"{path}.provenance")
        if "provenance" in obj else None,
    )


def _parse_operation(raw: Any, path: str) -> Operation:
    obj = _expect_object(
        raw, path,
        required=("name", "work", "load", "quality_metric", "quality_threshold"),
        optional=("work_parameters", "load_output", "capacity_bands", "critical",
                  "criticality_provenance", "risk_overrides"),
    )
    score_alias = {"unknown": "??"}
    threshold_obj = _expect_object(obj["quality_threshold"], f"{path}.quality_threshold",
                                   required=("value", "unit"))
    work_parameters = []
    for i, wp in enumerate(_expect_list(obj.get("work_parameters", []),
                                        f"{path}.work_parameters")):
        wp_path = f"{path}.work_parameters[{i}]"
        wp_obj = _expect_object(wp, wp_path, required=("name", "unit", "description"))
        work_parameters.append(WorkParameter(
            name=_expect_str(wp_obj["name"], f"{wp_path}.name"),
            unit=_expect_str(wp_obj["unit"], f"{wp_path}.unit"),
            description=_expect_str(wp_obj["description"], f"{wp_path}.description"),
        ))
    bands = None
    if "capacity_bands" in obj:
        bands_obj = _expect_object(obj["capacity_bands"], f"{path}.capacity_bands",
                                   required=("green_max", "yellow_max"))
        bands = CapacityBands(
            green_max=_expect_number(bands_obj["green_max"], f"{path}.capacity_bands.green_max"),
            yellow_max=_expect_number(bands_obj["yellow_max"], f"{path}.capacity_bands.yellow_max"),
        )
    overrides: dict[str, RiskLevel] = {}
    if "risk_overrides" in obj:
        raw_overrides = obj["risk_overrides"]
        if not isinstance(raw_overrides, dict):
            raise SchemaError(f"{path}.risk_overrides: expected an object")
        for scenario, level in raw_overrides.items():
            overrides[scenario] = _enum(RiskLevel, level, f"{path}.risk_overrides.{scenario}")
    return Operation(
        name=_expect_str(obj["name"], f"{path}.name"),
        work=_enum(OrdinalScore, obj["work"], f"{path}.work", aliases=score_alias),
        load=_enum(OrdinalScore, obj["load"], f"{path}.load", aliases=score_alias),
        quality_metric=_expect_str(obj["quality_metric"], f"{path}.quality_metric"),
        quality_threshold=QualityThreshold(
            value=_expect_number(threshold_obj["value"], f"{path}.quality_threshold.value"),
            unit=_expect_str(threshold_obj["unit"], f"{path}.quality_threshold.unit"),
        ),
        work_parameters=tuple(work_parameters),
        load_output=_expect_str(obj["load_output"], f"{path}.load_output")
        if "load_output" in obj else None,
        capacity_bands=bands,
        critical=_enum(Criticality, obj.get("critical", "pending"), f"{path}.critical"),
        criticality_provenance=_parse_provenance(obj["criticality_provenance"],
                                                 f"{path}.criticality_provenance")
        if "criticality_provenance" in obj else None,
        risk_overrides=overrides,
    )


def model_from_dict(doc: Any) -> Model:
    """Build a Model from an already-decoded JSON document."""
    obj = _expect_object(doc, "model",
                         required=("meta", "scenarios", "parameters", "operations"),
                         optional=("triage_rule", "notes"))
    meta_obj = _expect_object(obj["meta"], "meta", required=("name", "version"),
                              optional=("revision",))
    meta = Meta(
        name=_expect_str(meta_obj["name"], "meta.name"),
        version=_expect_str(meta_obj["version"], "meta.version"),
        revision=_expect_int(meta_obj.get("revision", 0), "meta.revision"),
    )
    scenarios = []
    for i, raw in enumerate(_expect_list(obj["scenarios"], "scenarios")):
        path = f"scenarios[{i}]"
        s = _expect_object(raw, path, required=("name", "description", "rationale"))
        scenarios.append(Scenario(
            name=_expect_str(s["name"], f"{path}.name"),
            description=_expect_str(s["description"], f"{path}.description"),
            rationale=_expect_str(s["rationale"], f"{path}.rationale"),
        ))
    parameters = [
        _parse_parameter(raw, f"parameters[{i}]")
        for i, raw in enumerate(_expect_list(obj["parameters"], "parameters"))
    ]
    operations = [
        _parse_operation(raw, f"operations[{i}]")
        for i, raw in enumerate(_expect_list(obj["operations"], "operations"))
    ]
    rule = TriageRule()
    if "triage_rule" in obj:
        rule_obj = _expect_object(obj["triage_rule"], "triage_rule",
                                  required=(), optional=("critical_min_product", "review_on_vh"))
        rule = TriageRule(
            critical_min_product=_expect_int(rule_obj.get("critical_min_product", 9),
                                             "triage_rule.critical_min_product"),
            review_on_vh=_expect_bool(rule_obj.get("review_on_vh", True),
                                      "triage_rule.review_on_vh"),
        )
    return Model(
        meta=meta,
        scenarios=tuple(scenarios),
        parameters=tuple(parameters),
        operations=tuple(operations),
        triage_rule=rule,
        notes=_expect_str(obj.get("notes", ""), "notes"),
    )


def parse_model(text: str) -> Model:
    """Parse a JSON model document.

    Raises ModelSyntaxError for malformed JSON (with line and column) and
    SchemaError for well-formed JSON that does not fit the schema.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return model_from_dict(doc)


# ---------------------------------------------------------------------------
# Serialization

def _provenance_dict(p: Provenance) -> dict:
    out: dict[str, Any] = {"source": p.source}
    if p.date is not None:
        out["date"] = p.date
    if p.note:
        out["note"] = p.note
    return out


def _number(value: float) -> float | int:
    # Keep integral values as JSON integers so files stay diff-friendly.
    if isinstance(value, float) and value.is_integer() and abs(value) < 2 ** 53:
        return int(value)
    return value


def model_to_dict(m: Model) -> dict:
    doc: dict[str, Any] = {
        "meta": {"name": m.meta.name, "version": m.meta.version, "revision": m.meta.revision},
        "scenarios": [
            {"name": s.name, "description": s.description, "rationale": s.rationale}
            for s in m.scenarios
        ],
        "parameters": [],
        "operations": [],
        "triage_rule": {
            "critical_min_product": m.triage_rule.critical_min_product,
            "review_on_vh": m.triage_rule.review_on_vh,
        },
        "notes": m.notes,
    }
    for p in m.parameters:
        entry: dict[str, Any] = {
            "name": p.name,
            "kind": p.kind.value,
            "category": p.category.value,
            "unit": p.unit,
            "description": p.description,
            "precision": p.precision,
        }
        if p.kind is ParameterKind.INPUT:
            entry["values"] = {
                scenario: "unknown" if v is None else _number(v)
                for scenario, v in p.values.items()
            }
        else:
            entry["formula"] = p.formula
        if p.provenance is not None:
            entry["provenance"] = _provenance_dict(p.provenance)
        doc["parameters"].append(entry)
    for op in m.operations:
        entry = {
            "name": op.name,
            "work": op.work.value,
            "load": op.load.value,
            "quality_metric": op.quality_metric,
            "quality_threshold": {
                "value": _number(op.quality_threshold.value),
                "unit": op.quality_threshold.unit,
            },
        }
        if op.work_parameters:
            entry["work_parameters"] = [
                {"name": wp.name, "unit": wp.unit, "description": wp.description}
                for wp in op.work_parameters
            ]
        if op.load_output is not None:
            entry["load_output"] = op.load_output
        if op.capacity_bands is not None:
            entry["capacity_bands"] = {
                "green_max": _number(op.capacity_bands.green_max),
                "yellow_max": _number(op.capacity_bands.yellow_max),
            }
        entry["critical"] = op.critical.value
        if op.criticality_provenance is not None:
            entry["criticality_provenance"] = _provenance_dict(op.criticality_provenance)
        if op.risk_overrides:
            entry["risk_overrides"] = {s: lvl.value for s, lvl in op.risk_overrides.items()}
        doc["operations"].append(entry)
    return doc


def serialize_model(m: Model) -> str:
    """Render a model as canonical JSON text (keys in declaration order)."""
    return json.dumps(model_to_dict(m), indent=2, ensure_ascii=False) + "\n"


def load_model(path) -> Model:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def write_model(path, m: Model) -> None:
    """Atomically replace the file at ``path`` with the serialized model.

    Writes a sibling temp file and renames it over the target so readers
    never observe a half-written document.
    """
    target = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent,
                                    prefix=target.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(serialize_model(m))
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
