"""Workbench for eliciting and checking scalability requirements.

The package turns a scenario model (inputs, formulas, operations with
work/load scores) into evaluated load tables, a criticality shortlist,
and a color-coded risk report, with a CLI and a small HTTP API on top.
"""

from .backlog import ingest_backlog
from .burstiness import (burstiness_from_active_hours, burstiness_from_series,
                         compose)
from .checklist import (ChecklistItem, ChecklistReport, ChecklistStatus,
                        elicitation_checklist)
from .errors import (CsvError, DegenerateSeriesError, EvalError, EvalErrorKind,
                     MissingOutputError, ModelSyntaxError, ParseError,
                     ScenarioMismatchError, SchemaError, UnknownScenarioError)
from .formula import (Cell, CellStatus, EvaluationResult, dependency_order,
                      evaluate, evaluate_all, format_quantity, parse_expr,
                      print_expr, references)
from .model import (CapacityBands, Category, Criticality, Meta, Model, Operation,
                    OrdinalScore, Parameter, ParameterKind, Provenance,
                    QualityThreshold, RiskLevel, Scenario, TriageRule,
                    WorkParameter, load_model, model_from_dict, model_to_dict,
                    parse_model, serialize_model, write_model)
from .report import render_checklist, render_diff, render_evaluation, render_report, render_triage
from .risk import (DiffReport, ModelState, RiskCell, RiskMatrix, assess_risk,
                   band_level, diff, snapshot)
from .triage import (TriageCounts, TriageOutcome, TriageResult, propose,
                     score_product, triage)
from .validate import ValidationReport, validate

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
