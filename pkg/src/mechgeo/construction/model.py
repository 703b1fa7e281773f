"""Typed model of a geometric construction: steps, predicates, statements.

A construction is a straight-line program: every step defines exactly one
named object (point, line, segment, or circle) from previously defined
objects. Statements attach named claims about the finished figure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union


class SemanticError(ValueError):
    """A construction that parses but does not make sense."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


# object kinds
POINT, LINE, SEGMENT, CIRCLE = "point", "line", "segment", "circle"


@dataclass(frozen=True)
class SegRef:
    """A segment given by its endpoints (inline `seg(A,B)` or a named one)."""
    a: str
    b: str

    def text(self) -> str:
        return f"seg({self.a}, {self.b})"


@dataclass(frozen=True)
class MeasureAtom:
    """A primitive quantity of the figure: a distance, a signed triangle
    area, or a circumradius."""
    kind: str          # dist | area | circumradius
    points: tuple[str, ...]

    def text(self) -> str:
        return f"{self.kind}({', '.join(self.points)})"


@dataclass(frozen=True)
class MeasureExpr:
    """Rational-coefficient linear combination of measure atoms."""
    terms: tuple[tuple[Fraction, MeasureAtom], ...]

    def text(self) -> str:
        parts = []
        for i, (coeff, atom) in enumerate(self.terms):
            mag = abs(coeff)
            body = atom.text() if mag == 1 else f"{_rat_text(mag)}*{atom.text()}"
            if i == 0:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts) if parts else "0"

    def atoms(self) -> tuple[MeasureAtom, ...]:
        return tuple(atom for _, atom in self.terms)


def _rat_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# steps
# ---------------------------------------------------------------------------

# kind -> (output object kind, argument schema)
# schema entries: "point" | "line" | "circle" | "point_or_line" | "int" | "rat"
STEP_SCHEMAS: dict[str, tuple[str, tuple[str, ...]]] = {
    "free_point": (POINT, ()),
    "fixed_point": (POINT, ("rat*",)),          # one rational per dimension
    "midpoint": (POINT, ("point", "point")),
    "line": (LINE, ("point", "point")),
    "segment": (SEGMENT, ("point", "point")),
    "circle_center_point": (CIRCLE, ("point", "point")),
    "circle_diameter": (CIRCLE, ("point", "point")),
    "point_on_line": (POINT, ("line",)),
    "point_on_circle": (POINT, ("circle",)),
    "intersect_lines": (POINT, ("line", "line")),
    "intersect_line_circle": (POINT, ("line", "circle", "int")),
    "foot_of_perpendicular": (POINT, ("point", "line")),
    "perpendicular_line": (LINE, ("point", "line")),
    "parallel_line": (LINE, ("point", "line")),
    "reflect_point": (POINT, ("point", "point_or_line")),
    "rotate90": (POINT, ("point", "point", "int")),
    "divide_segment": (POINT, ("point", "point", "int", "int")),
}

# steps that only make sense in the plane
PLANAR_ONLY_STEPS = {
    "circle_center_point", "circle_diameter", "point_on_circle",
    "intersect_line_circle", "perpendicular_line", "rotate90",
}


@dataclass(frozen=True)
class Step:
    id: str
    kind: str
    args: tuple = ()

    def text(self) -> str:
        out_kind = STEP_SCHEMAS[self.kind][0]
        if self.kind == "free_point":
            return f"point {self.id} free"
        if self.kind == "fixed_point":
            coords = ", ".join(_rat_text(c) for c in self.args)
            return f"point {self.id} = fixed({coords})"
        rendered = ", ".join(
            _rat_text(a) if isinstance(a, Fraction) else str(a)
            for a in self.args)
        return f"{out_kind} {self.id} = {self.kind}({rendered})"


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

# kind -> argument schema; entries: "point" | "seg" | "onable" | "expr" | "rat"
PREDICATE_SCHEMAS: dict[str, tuple[str, ...]] = {
    "collinear": ("point", "point", "point"),
    "parallel": ("seg", "seg"),
    "perpendicular": ("seg", "seg"),
    "equal_length": ("seg", "seg"),
    "concyclic": ("point", "point", "point", "point"),
    "point_on": ("point", "onable"),
    "coincide": ("point", "point"),
    "midpoint_of": ("point", "point", "point"),
    "measure_ratio": ("expr", "expr", "rat"),
    "geom_mean": ("seg", "seg", "seg"),
}

PLANAR_ONLY_PREDICATES = {"concyclic"}

PredicateArg = Union[str, SegRef, MeasureExpr, Fraction]


@dataclass(frozen=True)
class Predicate:
    kind: str
    args: tuple[PredicateArg, ...]

    def text(self) -> str:
        parts = []
        for a in self.args:
            if isinstance(a, SegRef):
                parts.append(a.text())
            elif isinstance(a, MeasureExpr):
                parts.append(a.text())
            elif isinstance(a, Fraction):
                parts.append(_rat_text(a))
            else:
                parts.append(a)
        return f"{self.kind}({', '.join(parts)})"

    def points_mentioned(self) -> tuple[str, ...]:
        out = []
        for a in self.args:
            if isinstance(a, str):
                out.append(a)
            elif isinstance(a, SegRef):
                out.extend((a.a, a.b))
            elif isinstance(a, MeasureExpr):
                for atom in a.atoms():
                    out.extend(atom.points)
        return tuple(out)


@dataclass(frozen=True)
class Statement:
    label: str
    predicate: Predicate

    def text(self) -> str:
        return f"statement {self.label} = {self.predicate.text()}"


# ---------------------------------------------------------------------------
# the construction itself
# ---------------------------------------------------------------------------

@dataclass
class Construction:
    dimension: int = 2
    steps: tuple[Step, ...] = ()
    statements: tuple[Statement, ...] = ()
    objects: dict[str, str] = field(default_factory=dict)  # id -> object kind

    def step_by_id(self, obj_id: str) -> Step:
        for s in self.steps:
            if s.id == obj_id:
                return s
        raise KeyError(obj_id)

    def statement_by_label(self, label: str) -> Statement:
        for s in self.statements:
            if s.label == label:
                return s
        raise KeyError(label)

    def point_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.steps
                     if STEP_SCHEMAS[s.kind][0] == POINT)

    def free_point_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.steps if s.kind == "free_point")

    def text(self) -> str:
        lines = []
        if self.dimension != 2:
            lines.append(f"dim {self.dimension}")
        lines.extend(s.text() for s in self.steps)
        lines.extend(s.text() for s in self.statements)
        return "\n".join(lines) + "\n"

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        if self.dimension not in (2, 3):
            raise SemanticError(f"dimension must be 2 or 3, got {self.dimension}")
        table: dict[str, str] = {}
        for step in self.steps:
            self._validate_step(step, table)
            table[step.id] = STEP_SCHEMAS[step.kind][0]
        labels = set()
        for stmt in self.statements:
            if stmt.label in labels:
                raise SemanticError(f"duplicate statement label '{stmt.label}'")
            labels.add(stmt.label)
            validate_predicate(stmt.predicate, table, self.dimension)
        self.objects = table

    def _validate_step(self, step: Step, table: dict[str, str]) -> None:
        if step.kind not in STEP_SCHEMAS:
            raise SemanticError(f"unknown step kind '{step.kind}'")
        if step.id in table:
            raise SemanticError(f"duplicate identifier '{step.id}'")
        if self.dimension == 3 and step.kind in PLANAR_ONLY_STEPS:
            raise SemanticError(
                f"step '{step.kind}' is only available in the plane")
        _, schema = STEP_SCHEMAS[step.kind]
        if schema == ("rat*",):
            if len(step.args) != self.dimension:
                raise SemanticError(
                    f"'{step.id}': fixed point needs {self.dimension} coordinates")
            for a in step.args:
                if not isinstance(a, Fraction):
                    raise SemanticError(f"'{step.id}': fixed coordinates must be rational")
            return
        if len(step.args) != len(schema):
            raise SemanticError(
                f"'{step.id}': {step.kind} takes {len(schema)} arguments, "
                f"got {len(step.args)}")
        for arg, want in zip(step.args, schema):
            if want == "int":
                if not isinstance(arg, int):
                    raise SemanticError(f"'{step.id}': expected an integer, got {arg!r}")
            elif want == "point_or_line":
                if table.get(arg) not in (POINT, LINE):
                    raise SemanticError(
                        f"'{step.id}': '{arg}' must be a defined point or line")
            else:
                if table.get(arg) != want:
                    raise SemanticError(
                        f"'{step.id}': '{arg}' must be a defined {want}")
        self._validate_step_details(step)

    def _validate_step_details(self, step: Step) -> None:
        if step.kind == "intersect_line_circle":
            branch = step.args[2]
            if branch not in (0, 1):
                raise SemanticError(f"'{step.id}': branch must be 0 or 1")
            if step.args[0] == step.args[1]:
                raise SemanticError(f"'{step.id}': the two objects must differ")
        elif step.kind == "rotate90":
            if step.args[2] not in (1, -1):
                raise SemanticError(f"'{step.id}': rotation sign must be 1 or -1")
            if step.args[0] == step.args[1]:
                raise SemanticError(f"'{step.id}': cannot rotate a point about itself")
        elif step.kind == "divide_segment":
            i, n = step.args[2], step.args[3]
            if n < 1:
                raise SemanticError(f"'{step.id}': part count must be >= 1")
            if not (0 <= i <= n):
                raise SemanticError(f"'{step.id}': part index must lie in 0..{n}")
        elif step.kind in ("midpoint", "line", "segment", "circle_center_point",
                           "circle_diameter"):
            if step.args[0] == step.args[1]:
                raise SemanticError(
                    f"'{step.id}': the two defining points must differ")
        elif step.kind == "intersect_lines":
            if step.args[0] == step.args[1]:
                raise SemanticError(f"'{step.id}': cannot intersect a line with itself")
        elif step.kind == "reflect_point":
            if step.args[0] == step.args[1]:
                raise SemanticError(f"'{step.id}': cannot reflect a point about itself")


def validate_predicate(pred: Predicate, table: dict[str, str],
                       dimension: int) -> None:
    if pred.kind not in PREDICATE_SCHEMAS:
        raise SemanticError(f"unknown predicate '{pred.kind}'")
    if dimension == 3 and pred.kind in PLANAR_ONLY_PREDICATES:
        raise SemanticError(f"predicate '{pred.kind}' is only available in the plane")
    schema = PREDICATE_SCHEMAS[pred.kind]
    if len(pred.args) != len(schema):
        raise SemanticError(
            f"{pred.kind} takes {len(schema)} arguments, got {len(pred.args)}")

    def need_point(name) -> None:
        if not isinstance(name, str) or table.get(name) != POINT:
            raise SemanticError(f"'{name}' must be a defined point")

    def need_seg(arg) -> SegRef:
        if isinstance(arg, SegRef):
            need_point(arg.a)
            need_point(arg.b)
            if arg.a == arg.b:
                raise SemanticError(f"degenerate segment seg({arg.a}, {arg.a})")
            return arg
        raise SemanticError(f"expected a segment, got {arg!r}")

    for arg, want in zip(pred.args, schema):
        if want == "point":
            need_point(arg)
        elif want == "seg":
            need_seg(arg)
        elif want == "onable":
            if isinstance(arg, SegRef):
                need_seg(arg)
            elif not (isinstance(arg, str)
                      and table.get(arg) in (LINE, SEGMENT, CIRCLE)):
                raise SemanticError(
                    f"'{arg}' must be a segment, line, or circle")
        elif want == "expr":
            if not isinstance(arg, MeasureExpr) or not arg.terms:
                raise SemanticError("expected a measure expression")
            for atom in arg.atoms():
                for p in atom.points:
                    need_point(p)
                if atom.kind in ("area", "circumradius") and dimension == 3:
                    raise SemanticError(
                        f"measure '{atom.kind}' is only available in the plane")
                if len(set(atom.points)) != len(atom.points):
                    raise SemanticError(
                        f"measure {atom.text()} repeats a point")
        elif want == "rat":
            if not isinstance(arg, Fraction):
                raise SemanticError(f"expected a rational constant, got {arg!r}")

    # geometrically vacuous argument repeats
    if pred.kind == "collinear" and len(set(pred.args)) != 3:
        raise SemanticError("collinear needs three distinct points")
    if pred.kind == "concyclic" and len(set(pred.args)) != 4:
        raise SemanticError("concyclic needs four distinct points")
    if pred.kind == "coincide" and pred.args[0] == pred.args[1]:
        raise SemanticError("coincide of a point with itself is vacuous")
    if pred.kind == "midpoint_of" and pred.args[1] == pred.args[2]:
        raise SemanticError("midpoint_of needs two distinct endpoints")
    if pred.kind in ("parallel", "perpendicular", "equal_length"):
        a, b = pred.args
        if {a.a, a.b} == {b.a, b.b}:
            raise SemanticError(f"{pred.kind} of a segment with itself is vacuous")
