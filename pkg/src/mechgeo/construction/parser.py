"""Text format for constructions: one step or statement per line.

    # a comment
    dim 3
    point A free
    point B = fixed(0, 0)
    point M = midpoint(A, B)
    line l = line(A, B)
    statement claim = equal_length(seg(A, M), seg(M, B))

The printer (`Construction.text()`) emits the canonical normal form;
parsing that text reproduces the construction exactly. Compound helpers
(`equilateral_apex`) are expanded into core steps at parse time.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .model import (PREDICATE_SCHEMAS, STEP_SCHEMAS, Construction,
                    MeasureAtom, MeasureExpr, Predicate, SegRef, SemanticError,
                    Statement, Step, validate_predicate)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[=(),+\-*/])
""", re.VERBOSE)

OBJECT_KEYWORDS = ("point", "line", "segment", "circle")
MEASURE_KINDS = {"dist": 2, "area": 3, "circumradius": 3}
MACROS = {"equilateral_apex"}


class _Line:
    """Token stream for a single source line."""

    def __init__(self, text: str, lineno: int):
        self.lineno = lineno
        self.tokens: list[tuple[str, str, int]] = []  # (kind, text, column)
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}",
                                 lineno, pos + 1)
            if m.lastgroup != "ws":
                self.tokens.append((m.lastgroup, m.group(), pos + 1))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            col = self.tokens[-1][2] + len(self.tokens[-1][1]) if self.tokens else 1
            raise ParseError("unexpected end of line", self.lineno, col)
        self.i += 1
        return tok

    def expect(self, text: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[1] != text:
            raise ParseError(f"expected {text!r}, found {tok[1]!r}",
                             self.lineno, tok[2])
        return tok

    def expect_ident(self, what: str = "identifier") -> str:
        tok = self.next()
        if tok[0] != "ident":
            raise ParseError(f"expected {what}, found {tok[1]!r}",
                             self.lineno, tok[2])
        return tok[1]

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing input {tok[1]!r}",
                             self.lineno, tok[2])

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == text

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        col = tok[2] if tok else 1
        return ParseError(message, self.lineno, col)


def _parse_number(line: _Line) -> Fraction:
    """integer | fraction a/b | decimal, with optional leading minus"""
    sign = 1
    if line.at("-"):
        line.next()
        sign = -1
    tok = line.next()
    if tok[0] != "number":
        raise ParseError(f"expected a number, found {tok[1]!r}",
                         line.lineno, tok[2])
    if "." in tok[1]:
        value = Fraction(tok[1])
    else:
        value = Fraction(int(tok[1]))
        if line.at("/"):
            line.next()
            den = line.next()
            if den[0] != "number" or "." in den[1] or int(den[1]) == 0:
                raise ParseError("expected a nonzero integer denominator",
                                 line.lineno, den[2])
            value = Fraction(value.numerator, int(den[1]))
    return sign * value


def _parse_int(line: _Line) -> int:
    v = _parse_number(line)
    if v.denominator != 1:
        raise line.error("expected an integer")
    return int(v)


def _parse_measure_atom(line: _Line) -> MeasureAtom:
    name = line.expect_ident("measure name")
    if name not in MEASURE_KINDS:
        raise ParseError(f"unknown measure '{name}'", line.lineno,
                         line.tokens[line.i - 1][2])
    line.expect("(")
    pts = [line.expect_ident("point")]
    for _ in range(MEASURE_KINDS[name] - 1):
        line.expect(",")
        pts.append(line.expect_ident("point"))
    line.expect(")")
    return MeasureAtom(name, tuple(pts))


def _parse_measure_term(line: _Line) -> tuple[Fraction, MeasureAtom]:
    tok = line.peek()
    coeff = Fraction(1)
    if tok is not None and tok[0] == "number":
        coeff = _parse_number(line)
        line.expect("*")
    return coeff, _parse_measure_atom(line)


def parse_measure_expr(line: _Line) -> MeasureExpr:
    terms = []
    neg = False
    if line.at("-"):
        line.next()
        neg = True
    coeff, atom = _parse_measure_term(line)
    terms.append((-coeff if neg else coeff, atom))
    while line.at("+") or line.at("-"):
        op = line.next()[1]
        coeff, atom = _parse_measure_term(line)
        terms.append((-coeff if op == "-" else coeff, atom))
    return MeasureExpr(tuple(terms))


def parse_measure_expression(text: str) -> MeasureExpr:
    """Parse a standalone measure expression (CLI --expr arguments)."""
    line = _Line(text, 1)
    expr = parse_measure_expr(line)
    line.done()
    return expr


def parse_predicate_text(text: str) -> Predicate:
    """Parse a standalone predicate, e.g. reparsing discovery output."""
    line = _Line(text, 1)
    pred = _parse_predicate(line)
    line.done()
    return pred


def _parse_seg_or_id(line: _Line) -> "SegRef | str":
    tok = line.peek()
    if tok is not None and tok[1] == "seg":
        line.next()
        line.expect("(")
        a = line.expect_ident("point")
        line.expect(",")
        b = line.expect_ident("point")
        line.expect(")")
        return SegRef(a, b)
    return line.expect_ident("object")


def _parse_predicate(line: _Line) -> Predicate:
    kind = line.expect_ident("predicate name")
    if kind not in PREDICATE_SCHEMAS:
        raise ParseError(f"unknown predicate '{kind}'", line.lineno,
                         line.tokens[line.i - 1][2])
    schema = PREDICATE_SCHEMAS[kind]
    line.expect("(")
    args: list = []
    for pos, want in enumerate(schema):
        if pos:
            line.expect(",")
        if want == "point":
            args.append(line.expect_ident("point"))
        elif want in ("seg", "onable"):
            args.append(_parse_seg_or_id(line))
        elif want == "expr":
            args.append(parse_measure_expr(line))
        elif want == "rat":
            args.append(_parse_number(line))
    line.expect(")")
    return Predicate(kind, tuple(args))


class _Builder:
    def __init__(self):
        self.steps: list[Step] = []
        self.statements: list[Statement] = []
        self.ids: set[str] = set()
        self.labels: set[str] = set()
        self.dimension = 2
        self.dim_locked = False
        self.table: dict[str, str] = {}   # id -> object kind, as validated
        self.validated = 0                # prefix of self.steps checked

    def validate_new_steps(self) -> None:
        """Validate steps appended since the last call, so semantic errors
        surface while the offending source line is still known."""
        shim = Construction(dimension=self.dimension)
        while self.validated < len(self.steps):
            step = self.steps[self.validated]
            shim._validate_step(step, self.table)
            self.table[step.id] = STEP_SCHEMAS[step.kind][0]
            self.validated += 1

    def fresh_id(self, stem: str) -> str:
        if stem not in self.ids:
            return stem
        k = 2
        while f"{stem}{k}" in self.ids:
            k += 1
        return f"{stem}{k}"

    def add_step(self, step: Step, lineno: int) -> None:
        if step.id in self.ids:
            raise SemanticError(f"duplicate identifier '{step.id}'", lineno)
        self.ids.add(step.id)
        self.steps.append(step)


def _expand_macro(b: _Builder, out_kind: str, name: str, fn: str,
                  line: _Line) -> None:
    if fn == "equilateral_apex":
        if out_kind != "point":
            raise line.error("equilateral_apex defines a point")
        line.expect("(")
        a = line.expect_ident("point")
        line.expect(",")
        p2 = line.expect_ident("point")
        line.expect(")")
        mid = b.fresh_id(f"{name}_mid")
        b.add_step(Step(mid, "midpoint", (a, p2)), line.lineno)
        base = b.fresh_id(f"{name}_base")
        b.add_step(Step(base, "line", (a, p2)), line.lineno)
        perp = b.fresh_id(f"{name}_perp")
        b.add_step(Step(perp, "perpendicular_line", (mid, base)), line.lineno)
        circ = b.fresh_id(f"{name}_circ")
        b.add_step(Step(circ, "circle_center_point", (a, p2)), line.lineno)
        b.add_step(Step(name, "intersect_line_circle", (perp, circ, 1)),
                   line.lineno)
        return
    raise line.error(f"unknown construction '{fn}'")


def _parse_step_line(b: _Builder, out_kind: str, line: _Line) -> None:
    name = line.expect_ident("identifier")
    if line.at("free"):
        line.next()
        line.done()
        if out_kind != "point":
            raise line.error("only points can be free")
        b.add_step(Step(name, "free_point"), line.lineno)
        return
    line.expect("=")
    fn = line.expect_ident("construction name")
    if fn in MACROS:
        _expand_macro(b, out_kind, name, fn, line)
        line.done()
        return
    if fn == "fixed":
        if out_kind != "point":
            raise line.error("only points can be fixed")
        line.expect("(")
        coords = [_parse_number(line)]
        while line.at(","):
            line.next()
            coords.append(_parse_number(line))
        line.expect(")")
        line.done()
        b.add_step(Step(name, "fixed_point", tuple(coords)), line.lineno)
        return
    kind = fn if fn != "line" else "line"
    if kind not in STEP_SCHEMAS:
        raise line.error(f"unknown construction '{fn}'")
    want_kind, schema = STEP_SCHEMAS[kind]
    if want_kind != out_kind:
        raise line.error(f"'{fn}' defines a {want_kind}, not a {out_kind}")
    line.expect("(")
    args: list = []
    for pos, want in enumerate(schema):
        if pos:
            line.expect(",")
        if want == "int":
            args.append(_parse_int(line))
        else:
            args.append(line.expect_ident("object"))
    line.expect(")")
    line.done()
    b.add_step(Step(name, kind, tuple(args)), line.lineno)


def parse(source: str) -> Construction:
    """Parse the text format; raises ParseError / SemanticError."""
    b = _Builder()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        text = raw.split("#", 1)[0].rstrip()
        if not text.strip():
            continue
        line = _Line(text, lineno)
        head = line.expect_ident("keyword")
        try:
            if head == "dim":
                if b.dim_locked or b.steps or b.statements:
                    raise line.error("'dim' must come before any step")
                value = _parse_int(line)
                line.done()
                if value not in (2, 3):
                    raise ParseError("dimension must be 2 or 3", lineno, 1)
                b.dimension = value
                b.dim_locked = True
            elif head in OBJECT_KEYWORDS:
                _parse_step_line(b, head, line)
                b.validate_new_steps()
            elif head == "statement":
                label = line.expect_ident("statement label")
                if label in b.labels:
                    raise SemanticError(f"duplicate statement label '{label}'",
                                        lineno)
                line.expect("=")
                pred = _parse_predicate(line)
                line.done()
                validate_predicate(pred, b.table, b.dimension)
                b.labels.add(label)
                b.statements.append(Statement(label, pred))
            else:
                raise ParseError(f"unknown keyword '{head}'", lineno, 1)
        except SemanticError as exc:
            if exc.line is None:
                raise SemanticError(str(exc), lineno) from None
            raise
    c = Construction(dimension=b.dimension, steps=tuple(b.steps),
                     statements=tuple(b.statements))
    try:
        c.validate()
    except SemanticError as exc:
        raise exc
    return c
