"""Command line interface.

Exit codes: 0 success, 1 validation failure (including unparseable model
documents), 2 evaluation failure (cycles, unknown-blocking inputs,
division by zero), 3 I/O or argument errors. Set SCALEREQ_NO_COLOR to
suppress color hints on terminals; file output never contains them.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path

from .backlog import ingest_backlog
from .burstiness import burstiness_from_active_hours, burstiness_from_series
from .checklist import elicitation_checklist
from .errors import (CsvError, DegenerateSeriesError, EvalError, MissingOutputError,
                     ModelSyntaxError, ScenarioMismatchError, SchemaError,
                     UnknownScenarioError)
from .formula import evaluate, evaluate_all
from .model import Model, load_model, write_model
from .report import (render_checklist, render_diff, render_evaluation,
                     render_report, render_triage)
from .risk import assess_risk, diff, snapshot
from .triage import triage
from .validate import validate

OK, VALIDATION_FAILURE, EVALUATION_FAILURE, USAGE_FAILURE = 0, 1, 2, 3

_ANSI = {"green": "\x1b[32mgreen\x1b[0m",
         "yellow": "\x1b[33myellow\x1b[0m",
         "red": "\x1b[31mred\x1b[0m"}
_LEVEL_RE = re.compile(r"\b(green|yellow|red)\b")


def _colorize(text: str) -> str:
    """Tint risk level names when writing to an interactive terminal."""
    if os.environ.get("SCALEREQ_NO_COLOR"):
        return text
    if not sys.stdout.isatty():
        return text
    return _LEVEL_RE.sub(lambda m: _ANSI[m.group(1)], text)


def _emit(text: str, out: Path | None = None, color: bool = False) -> None:
    if out is not None:
        out.write_text(text, encoding="utf-8")
        return
    sys.stdout.write(_colorize(text) if color else text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _load(path: str) -> Model:
    return load_model(path)


# ---------------------------------------------------------------------------
# Subcommands

def _cmd_validate(args) -> int:
    report = validate(_load(args.model))
    for message in report.errors:
        print(f"ERROR {message}", file=sys.stderr)
    for message in report.warnings:
        print(f"WARNING {message}", file=sys.stderr)
    print(f"errors: {len(report.errors)}, warnings: {len(report.warnings)}")
    return OK if report.ok else VALIDATION_FAILURE


def _cmd_eval(args) -> int:
    m = _load(args.model)
    result = evaluate(m, args.scenario) if args.scenario else evaluate_all(m)
    _emit(render_evaluation(m, result, args.format))
    return OK


def _cmd_triage(args) -> int:
    _emit(render_triage(triage(_load(args.model)), args.format))
    return OK


def _cmd_report(args) -> int:
    m = _load(args.model)
    result = evaluate_all(m)
    text = render_report(m, result, assess_risk(m, result), triage(m), args.format)
    _emit(text, out=Path(args.out) if args.out else None, color=args.format == "md")
    return OK


def _cmd_checklist(args) -> int:
    m = _load(args.model)
    report = validate(m)
    if not report.ok:
        for message in report.errors:
            print(f"ERROR {message}", file=sys.stderr)
        return VALIDATION_FAILURE
    _emit(render_checklist(elicitation_checklist(m)))
    return OK


def _cmd_burstiness(args) -> int:
    # Bad numbers here are bad command-line input, not a bad model.
    try:
        if args.series is not None:
            samples = [float(token) for token in args.series.split(",") if token.strip()]
            value = burstiness_from_series(samples)
        else:
            value = burstiness_from_active_hours(args.active_hours)
    except (ValueError, DegenerateSeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_FAILURE
    print(value)
    return OK


def _cmd_diff(args) -> int:
    report = diff(snapshot(_load(args.model_a)), snapshot(_load(args.model_b)))
    _emit(render_diff(report, args.format))
    return OK


def _cmd_ingest(args) -> int:
    operations = ingest_backlog(Path(args.backlog).read_text(encoding="utf-8"))
    m = _load(args.into)
    merged = Model(meta=m.meta, scenarios=m.scenarios, parameters=m.parameters,
                   operations=m.operations + operations,
                   triage_rule=m.triage_rule, notes=m.notes)
    report = validate(merged)
    if not report.ok:
        for message in report.errors:
            print(f"ERROR {message}", file=sys.stderr)
        print("error: merged model does not validate; nothing written", file=sys.stderr)
        return VALIDATION_FAILURE
    write_model(args.into, merged)
    print(f"ingested {len(operations)} operations into {args.into}")
    return OK


def _cmd_serve(args) -> int:
    report = validate(_load(args.model))
    if not report.ok:
        for message in report.errors:
            print(f"ERROR {message}", file=sys.stderr)
        return VALIDATION_FAILURE
    import uvicorn

    from .server import create_app

    app = create_app(Path(args.model), ui_dir=Path(args.ui_dir) if args.ui_dir else None)
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scalereq",
        description="Workbench for scalability requirements: evaluate scenario"
                    " models, triage operations, and render risk reports.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model document")
    p.add_argument("model")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("eval", help="evaluate derived parameters")
    p.add_argument("model")
    p.add_argument("--scenario", help="restrict to one scenario (strict:"
                                      " unknown inputs become errors)")
    p.add_argument("--format", choices=("json", "md", "csv"), default="md")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("triage", help="propose and report criticality")
    p.add_argument("model")
    p.add_argument("--format", choices=("json", "md"), default="md")
    p.set_defaults(func=_cmd_triage)

    p = sub.add_parser("report", help="full report: triage, parameters, risk")
    p.add_argument("model")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("checklist", help="elicitation checklist status")
    p.add_argument("model")
    p.set_defaults(func=_cmd_checklist)

    p = sub.add_parser("burstiness", help="peak-over-average helpers")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--series", help="comma-separated samples")
    group.add_argument("--active-hours", type=float,
                       help="hours per day the load is actually present")
    p.set_defaults(func=_cmd_burstiness)

    p = sub.add_parser("diff", help="compare two model files")
    p.add_argument("model_a")
    p.add_argument("model_b")
    p.add_argument("--format", choices=("json", "md"), default="md")
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("serve", help="serve the HTTP API (and optionally a UI)")
    p.add_argument("model")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--ui-dir", help="directory with a built web UI to serve at /")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("ingest", help="append operations from a backlog CSV")
    p.add_argument("backlog")
    p.add_argument("--into", required=True, metavar="MODEL")
    p.set_defaults(func=_cmd_ingest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad arguments; fold that into our usage code.
        return OK if exc.code == 0 else USAGE_FAILURE
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_FAILURE
    except UnknownScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_FAILURE
    except (EvalError, MissingOutputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EVALUATION_FAILURE
    except (ModelSyntaxError, SchemaError, CsvError, ScenarioMismatchError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
