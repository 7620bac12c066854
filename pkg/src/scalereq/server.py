"""HTTP API for the workbench UI.

Read endpoints return the current model state plus its revision. What-if
evaluation is ephemeral: it never touches the file. Persisted edits go
through the parameter update endpoint, which demands provenance, bumps
the revision, and rewrites the model file atomically. Optimistic
concurrency: a client may send the revision it based its edit on and
gets 409 back when someone else persisted in between.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .checklist import elicitation_checklist
from .formula import evaluate_all
from .model import (Model, ParameterKind, Provenance, load_model, model_to_dict,
                    write_model)
from .risk import assess_risk
from .triage import triage
from .validate import _check_category_value


class _Workbench:
    """Shared state behind the API: the model, its file, and a write lock."""

    def __init__(self, path: Path):
        self.path = path
        self.model: Model = load_model(path)
        self.lock = threading.Lock()

    @property
    def revision(self) -> int:
        return self.model.meta.revision

    def persist(self, m: Model) -> Model:
        updated = m.with_revision(self.revision + 1)
        write_model(self.path, updated)
        self.model = updated
        return updated


def _override_errors(m: Model, overrides: Any) -> list[dict]:
    errors: list[dict] = []
    if not isinstance(overrides, dict):
        return [{"parameter": None, "scenario": None,
                 "message": "overrides must be an object of"
                            " {parameter: {scenario: number}}"}]
    scenario_names = m.scenario_names()
    for name, per_scenario in overrides.items():
        p = m.parameter(name)
        if p is None:
            errors.append({"parameter": name, "scenario": None,
                           "message": f"unknown parameter {name}"})
            continue
        if p.kind is ParameterKind.DERIVED:
            errors.append({"parameter": name, "scenario": None,
                           "message": f"{name} is derived; override its inputs instead"})
            continue
        if not isinstance(per_scenario, dict):
            errors.append({"parameter": name, "scenario": None,
                           "message": "expected an object of {scenario: number}"})
            continue
        for scenario, value in per_scenario.items():
            if scenario not in scenario_names:
                errors.append({"parameter": name, "scenario": scenario,
                               "message": f"unknown scenario {scenario}"})
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                errors.append({"parameter": name, "scenario": scenario,
                               "message": "value must be a number"})
                continue
            fault = _check_category_value(p.category, float(value))
            if fault:
                errors.append({"parameter": name, "scenario": scenario,
                               "message": fault})
    return errors


def _apply_overrides(m: Model, overrides: dict) -> Model:
    for name, per_scenario in overrides.items():
        for scenario, value in per_scenario.items():
            m = m.with_value(name, scenario, float(value))
    return m


def _provenance_from_body(raw: Any) -> Provenance | None:
    if not isinstance(raw, dict):
        return None
    source = raw.get("source")
    if not isinstance(source, str) or not source.strip():
        return None
    date = raw.get("date")
    note = raw.get("note", "")
    return Provenance(source=source,
                      date=date if isinstance(date, str) and date else None,
                      note=note if isinstance(note, str) else "")


def create_app(model_path: Path, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="scalereq workbench", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    state = _Workbench(Path(model_path))

    @app.get("/api/model")
    def get_model():
        m = state.model
        return {"revision": m.meta.revision, "model": model_to_dict(m)}

    @app.get("/api/scenarios")
    def get_scenarios():
        m = state.model
        return {"revision": m.meta.revision,
                "scenarios": [{"name": s.name, "description": s.description,
                               "rationale": s.rationale} for s in m.scenarios]}

    @app.get("/api/eval")
    def get_eval():
        m = state.model
        return {"revision": m.meta.revision, **evaluate_all(m).to_payload()}

    @app.get("/api/triage")
    def get_triage():
        m = state.model
        return {"revision": m.meta.revision, **triage(m).to_payload()}

    @app.get("/api/risk")
    def get_risk():
        m = state.model
        return {"revision": m.meta.revision,
                **assess_risk(m, evaluate_all(m)).to_payload()}

    @app.get("/api/checklist")
    def get_checklist():
        m = state.model
        return {"revision": m.meta.revision, **elicitation_checklist(m).to_payload()}

    @app.post("/api/whatif")
    def whatif(body: dict = Body(...)):
        m = state.model
        overrides = body.get("overrides", {})
        errors = _override_errors(m, overrides)
        if errors:
            return JSONResponse(status_code=422, content={"errors": errors})
        probe = _apply_overrides(m, overrides)
        result = evaluate_all(probe)
        return {"revision": m.meta.revision,
                "evaluation": result.to_payload(),
                "risk": assess_risk(probe, result).to_payload()}

    @app.put("/api/parameters/{name}/values/{scenario}")
    def update_parameter(name: str, scenario: str, body: dict = Body(...)):
        with state.lock:
            m = state.model
            p = m.parameter(name)
            if p is None:
                return JSONResponse(status_code=404,
                                    content={"error": f"unknown parameter {name}"})
            if scenario not in m.scenario_names():
                return JSONResponse(status_code=404,
                                    content={"error": f"unknown scenario {scenario}"})
            if p.kind is ParameterKind.DERIVED:
                return JSONResponse(status_code=400,
                                    content={"error": f"{name} is derived; its value"
                                                      " is computed, not set"})
            provenance = _provenance_from_body(body.get("provenance"))
            if provenance is None:
                return JSONResponse(status_code=400,
                                    content={"error": "provenance with a non-empty"
                                                      " source is required"})
            value = body.get("value")
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                return JSONResponse(status_code=400,
                                    content={"error": "value must be a number"})
            fault = _check_category_value(p.category, float(value))
            if fault:
                return JSONResponse(status_code=400, content={"error": fault})
            expected = body.get("expected_revision")
            if expected is not None and expected != state.revision:
                return JSONResponse(status_code=409,
                                    content={"error": f"stale revision: server is at"
                                                      f" {state.revision}, client sent"
                                                      f" {expected}",
                                             "revision": state.revision})
            updated = state.persist(
                m.with_value(name, scenario, float(value), provenance=provenance))
            p = updated.parameter(name)
            assert p is not None
            return {"revision": updated.meta.revision,
                    "parameter": {"name": p.name,
                                  "values": {s: ("unknown" if v is None else v)
                                             for s, v in p.values.items()},
                                  "provenance": {"source": provenance.source,
                                                 "date": provenance.date,
                                                 "note": provenance.note}}}

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
