"""Arithmetic formulas over named parameters.

Grammar (left-associative, longest-match tokens):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := NUMBER | IDENT | '(' expr ')' | '-' factor

Numbers are decimal literals with an optional fraction and exponent;
identifiers start with a letter or underscore. All arithmetic is plain
IEEE-754 double precision. Rounding happens only when a value is turned
into display text, never inside the computation.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Union

from .errors import EvalError, EvalErrorKind, ParseError, UnknownScenarioError
from .model import Model, Parameter, ParameterKind


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Reference:
    name: str


@dataclass(frozen=True)
class Negate:
    operand: "Expr"


@dataclass(frozen=True)
class BinaryOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


Expr = Union[Number, Reference, Negate, BinaryOp]

_TOKEN_RE = re.compile(
    r"(?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[+\-*/()])",
    re.ASCII,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(pos, "a number, name, or operator", text[pos])
        kind = match.lastgroup or "op"
        tokens.append((kind, match.group(), pos))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> tuple[str, str, int] | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _fail(self, expected: str):
        token = self._peek()
        if token is None:
            raise ParseError(len(self.text), expected)
        raise ParseError(token[2], expected, token[1])

    def parse(self) -> Expr:
        expr = self._expr()
        if self._peek() is not None:
            self._fail("end of formula")
        return expr

    def _expr(self) -> Expr:
        node = self._term()
        while (token := self._peek()) is not None and token[1] in "+-":
            self.index += 1
            node = BinaryOp(token[1], node, self._term())
        return node

    def _term(self) -> Expr:
        node = self._factor()
        while (token := self._peek()) is not None and token[1] in "*/":
            self.index += 1
            node = BinaryOp(token[1], node, self._factor())
        return node

    def _factor(self) -> Expr:
        token = self._peek()
        if token is None:
            self._fail("a number, name, or '('")
        kind, text, pos = token
        if kind == "number":
            self.index += 1
            return Number(float(text))
        if kind == "name":
            self.index += 1
            return Reference(text)
        if text == "(":
            self.index += 1
            node = self._expr()
            closing = self._peek()
            if closing is None or closing[1] != ")":
                self._fail("')'")
            self.index += 1
            return node
        if text == "-":
            self.index += 1
            return Negate(self._factor())
        self._fail("a number, name, or '('")
        raise AssertionError("unreachable")


def parse_expr(text: str) -> Expr:
    """Parse a formula into an expression tree.

    Raises ParseError with the byte offset of the first token that does
    not fit the grammar and a hint about what was expected there.
    """
    return _Parser(text).parse()


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinaryOp):
        return _PRECEDENCE[e.op]
    return 3


def _format_literal(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def print_expr(e: Expr) -> str:
    """Render an expression in canonical text form.

    The output reparses to a structurally identical tree: parentheses are
    emitted exactly where the grammar's left associativity would otherwise
    regroup the operands.
    """
    if isinstance(e, Number):
        return _format_literal(e.value)
    if isinstance(e, Reference):
        return e.name
    if isinstance(e, Negate):
        inner = print_expr(e.operand)
        if _prec(e.operand) < 3:
            inner = f"({inner})"
        return f"-{inner}"
    left = print_expr(e.left)
    if _prec(e.left) < _PRECEDENCE[e.op]:
        left = f"({left})"
    right = print_expr(e.right)
    if _prec(e.right) <= _PRECEDENCE[e.op]:
        right = f"({right})"
    return f"{left} {e.op} {right}"


def references(e: Expr) -> tuple[str, ...]:
    """Names referenced by an expression, in first-appearance order."""
    out: list[str] = []

    def walk(node: Expr):
        if isinstance(node, Reference):
            if node.name not in out:
                out.append(node.name)
        elif isinstance(node, Negate):
            walk(node.operand)
        elif isinstance(node, BinaryOp):
            walk(node.left)
            walk(node.right)

    walk(e)
    return tuple(out)


# ---------------------------------------------------------------------------
# Dependency ordering

def _find_cycle(graph: dict[str, list[str]], candidates: list[str]) -> tuple[str, ...]:
    # Iterative DFS; returns the first cycle found, in edge order.
    remaining = set(candidates)
    for start in candidates:
        stack = [(start, iter(graph.get(start, ())))]
        on_path = {start: 0}
        path = [start]
        while stack:
            node, edges = stack[-1]
            advanced = False
            for nxt in edges:
                if nxt not in remaining:
                    continue
                if nxt in on_path:
                    return tuple(path[on_path[nxt]:])
                on_path[nxt] = len(path)
                path.append(nxt)
                stack.append((nxt, iter(graph.get(nxt, ()))))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.pop(path.pop(), None)
    return ()


def dependency_order(m: Model) -> tuple[str, ...]:
    """Topological evaluation order over all parameters.

    Deterministic: among parameters whose dependencies are all satisfied,
    the one declared first comes first. Raises EvalError(CYCLE) naming
    every parameter on the cycle, and EvalError(MISSING_REFERENCE) if a
    formula mentions a name that is not a parameter.
    """
    position = {p.name: i for i, p in enumerate(m.parameters)}
    depends: dict[str, tuple[str, ...]] = {}
    dependents: dict[str, list[str]] = {name: [] for name in position}
    for p in m.parameters:
        if p.kind is ParameterKind.DERIVED:
            refs = references(parse_expr(p.formula or ""))
            for ref in refs:
                if ref not in position:
                    raise EvalError(
                        EvalErrorKind.MISSING_REFERENCE,
                        f"{p.name}: formula references unknown parameter {ref}",
                    )
                dependents[ref].append(p.name)
            depends[p.name] = refs
        else:
            depends[p.name] = ()

    pending = {name: len(deps) for name, deps in depends.items()}
    ready = [position[name] for name, count in pending.items() if count == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        name = m.parameters[heapq.heappop(ready)].name
        order.append(name)
        for dependent in dependents[name]:
            pending[dependent] -= 1
            if pending[dependent] == 0:
                heapq.heappush(ready, position[dependent])
    if len(order) < len(position):
        stuck = [p.name for p in m.parameters if p.name not in set(order)]
        graph = {name: list(deps) for name, deps in depends.items()}
        cycle = _find_cycle(graph, stuck) or tuple(stuck)
        loop = " -> ".join(cycle + (cycle[0],)) if cycle else "?"
        raise EvalError(EvalErrorKind.CYCLE, f"formula cycle: {loop}", members=cycle)
    return tuple(order)


# ---------------------------------------------------------------------------
# Display formatting

THIN_SPACE = " "


def format_quantity(value: float, precision: int) -> str:
    """Human rendering: round half away from zero at ``precision`` decimal
    places, thousands grouped with a thin space."""
    quantum = Decimal(1).scaleb(-precision)
    q = Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP)
    if q == 0:
        q = abs(q)  # a negative value that rounds to zero must not keep its sign
    return format(q, ",f").replace(",", THIN_SPACE)


# ---------------------------------------------------------------------------
# Evaluation

class CellStatus(str, Enum):
    OK = "ok"
    UNKNOWN = "unknown"
    ERROR = "error"


UNKNOWN_DISPLAY = "??"


@dataclass(frozen=True)
class Cell:
    value: float | None
    display: str
    status: CellStatus
    note: str = ""


@dataclass(frozen=True)
class EvaluationResult:
    scenarios: tuple[str, ...]
    order: tuple[str, ...]
    cells: dict[str, dict[str, Cell]]  # scenario -> parameter -> Cell

    def cell(self, scenario: str, name: str) -> Cell:
        return self.cells[scenario][name]

    def value(self, scenario: str, name: str) -> float | None:
        return self.cells[scenario][name].value

    def to_payload(self) -> dict:
        results: dict[str, dict] = {}
        for scenario in self.scenarios:
            row: dict[str, dict] = {}
            for name in self.order:
                cell = self.cells[scenario][name]
                entry = {"value": cell.value, "display": cell.display,
                         "status": cell.status.value}
                if cell.note:
                    entry["note"] = cell.note
                row[name] = entry
            results[scenario] = row
        return {"scenarios": list(self.scenarios),
                "evaluation_order": list(self.order),
                "results": results}


def _eval_expr(e: Expr, env: dict[str, float], owner: str) -> float:
    if isinstance(e, Number):
        return e.value
    if isinstance(e, Reference):
        try:
            return env[e.name]
        except KeyError:
            raise EvalError(EvalErrorKind.MISSING_REFERENCE,
                            f"{owner}: unknown parameter {e.name}") from None
    if isinstance(e, Negate):
        return -_eval_expr(e.operand, env, owner)
    left = _eval_expr(e.left, env, owner)
    right = _eval_expr(e.right, env, owner)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if right == 0.0:
        raise EvalError(EvalErrorKind.DIVISION_BY_ZERO,
                        f"division by zero while evaluating {owner}")
    return left / right


def _evaluate_scenario(m: Model, scenario: str, order: tuple[str, ...],
                       params: dict[str, Parameter], strict: bool) -> dict[str, Cell]:
    env: dict[str, float] = {}
    unknown_root: dict[str, str] = {}
    row: dict[str, Cell] = {}
    for name in order:
        p = params[name]
        if p.kind is ParameterKind.INPUT:
            value = p.values.get(scenario)
            if value is None:
                unknown_root[name] = name
                row[name] = Cell(None, UNKNOWN_DISPLAY, CellStatus.UNKNOWN)
            else:
                env[name] = value
                row[name] = Cell(value, format_quantity(value, p.precision), CellStatus.OK)
            continue
        expr = parse_expr(p.formula or "")
        blockers = [r for r in references(expr) if r in unknown_root]
        if blockers:
            root = unknown_root[blockers[0]]
            if strict:
                raise EvalError(
                    EvalErrorKind.UNKNOWN_INPUT,
                    f"{name} requires input {root}, which is unknown in scenario {scenario}",
                )
            unknown_root[name] = root
            row[name] = Cell(None, UNKNOWN_DISPLAY, CellStatus.UNKNOWN,
                             note=f"requires {root}")
            continue
        try:
            value = _eval_expr(expr, env, name)
        except EvalError as exc:
            if strict or exc.kind is EvalErrorKind.MISSING_REFERENCE:
                raise
            # Value-level fault: keep the rest of the result usable.
            unknown_root[name] = name
            row[name] = Cell(None, "error", CellStatus.ERROR, note=str(exc))
            continue
        env[name] = value
        row[name] = Cell(value, format_quantity(value, p.precision), CellStatus.OK)
    return row


def evaluate(m: Model, scenario: str) -> EvaluationResult:
    """Evaluate one scenario, refusing to paper over missing numbers.

    Raises EvalError(UNKNOWN_INPUT) when a derived parameter transitively
    needs an input that is unknown in this scenario; unknown inputs that
    feed nothing are simply marked unknown in the result.
    """
    if scenario not in m.scenario_names():
        raise UnknownScenarioError(f"unknown scenario: {scenario}")
    order = dependency_order(m)
    params = {p.name: p for p in m.parameters}
    cells = {scenario: _evaluate_scenario(m, scenario, order, params, strict=True)}
    return EvaluationResult(scenarios=(scenario,), order=order, cells=cells)


def evaluate_all(m: Model) -> EvaluationResult:
    """Evaluate every scenario.

    Only structural faults (cycles, dangling references) abort; scenarios
    with unknown inputs get per-cell unknown markers instead so a half
    -elicited model still produces a usable table.
    """
    order = dependency_order(m)
    params = {p.name: p for p in m.parameters}
    cells = {
        scenario: _evaluate_scenario(m, scenario, order, params, strict=False)
        for scenario in m.scenario_names()
    }
    return EvaluationResult(scenarios=m.scenario_names(), order=order, cells=cells)
