"""Numeric semantics: scale-invariant residuals for predicates, per-step
defining-relation residuals, and float evaluation of measure expressions."""
from __future__ import annotations

import math
from fractions import Fraction

from .model import (Construction, MeasureAtom, MeasureExpr, Predicate, SegRef,
                    Statement)
from .sampler import (Instance, cross2, cross3, rot90, vadd, vdot, vscale,
                      vsub)

DEFAULT_TOL = 1e-8


def _f(v) -> tuple[float, ...]:
    return tuple(float(x) for x in v)


def _norm(v) -> float:
    return math.sqrt(sum(float(x) * float(x) for x in v))


def _ratio(num: float, den: float) -> float:
    num = abs(num)
    if num == 0.0:
        return 0.0
    return num / max(den, 1e-300)


def _cross_norm(a, b) -> float:
    if len(a) == 2:
        return abs(float(cross2(a, b)))
    return _norm(cross3(a, b))


def _seg_vector(inst: Instance, seg: SegRef):
    return vsub(inst.point(seg.b), inst.point(seg.a))


# ---------------------------------------------------------------------------
# predicate residuals
# ---------------------------------------------------------------------------

def predicate_residual(pred: Predicate, inst: Instance,
                       alignment: dict | None = None) -> float:
    """Scale-invariant defining residual; ~0 iff the predicate holds."""
    kind = pred.kind
    P = inst.point
    if kind == "collinear":
        a, b, c = (P(x) for x in pred.args)
        u, v = vsub(b, a), vsub(c, a)
        return _ratio(_cross_norm(u, v), _norm(u) * _norm(v))
    if kind == "parallel":
        u = _seg_vector(inst, pred.args[0])
        v = _seg_vector(inst, pred.args[1])
        return _ratio(_cross_norm(u, v), _norm(u) * _norm(v))
    if kind == "perpendicular":
        u = _seg_vector(inst, pred.args[0])
        v = _seg_vector(inst, pred.args[1])
        return _ratio(float(vdot(u, v)), _norm(u) * _norm(v))
    if kind == "equal_length":
        u = _seg_vector(inst, pred.args[0])
        v = _seg_vector(inst, pred.args[1])
        uu, vv = float(vdot(u, u)), float(vdot(v, v))
        return _ratio(uu - vv, uu + vv)
    if kind == "concyclic":
        return _concyclic_residual([_f(P(x)) for x in pred.args])
    if kind == "point_on":
        return _point_on_residual(inst, pred.args[0], pred.args[1])
    if kind == "coincide":
        a, b = P(pred.args[0]), P(pred.args[1])
        return _ratio(_norm(vsub(a, b)), inst.figure_scale())
    if kind == "midpoint_of":
        m, a, b = (P(x) for x in pred.args)
        gap = vsub(vscale(2, m), vadd(a, b))
        return _ratio(_norm(gap), _norm(vsub(b, a)))
    if kind == "measure_ratio":
        e1, e2, ratio = pred.args
        v1 = eval_measure_expr(e1, inst, alignment)
        v2 = eval_measure_expr(e2, inst, alignment)
        p, q = ratio.numerator, ratio.denominator
        return _ratio(q * v1 - p * v2, abs(q * v1) + abs(p * v2))
    if kind == "geom_mean":
        v0 = _norm(_seg_vector(inst, pred.args[0]))
        v1 = _norm(_seg_vector(inst, pred.args[1]))
        v2 = _norm(_seg_vector(inst, pred.args[2]))
        return _ratio(v0 * v0 - v1 * v2, v0 * v0 + abs(v1 * v2))
    raise AssertionError(f"unhandled predicate kind {kind}")


def _concyclic_residual(pts: list[tuple[float, ...]]) -> float:
    rows = [[x, y, x * x + y * y, 1.0] for x, y in pts]
    det = _det4(rows)
    dists = [math.dist(pts[i], pts[j])
             for i in range(4) for j in range(i + 1, 4)]
    mean = sum(dists) / len(dists)
    return _ratio(det, mean ** 4)


def _det4(m: list[list[float]]) -> float:
    def det3(a):
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    total = 0.0
    for col in range(4):
        minor = [[m[r][c] for c in range(4) if c != col] for r in range(1, 4)]
        term = m[0][col] * det3(minor)
        total += term if col % 2 == 0 else -term
    return total


def _point_on_residual(inst: Instance, pid: str, target) -> float:
    p = inst.point(pid)
    if isinstance(target, SegRef):
        a = inst.point(target.a)
        d = vsub(inst.point(target.b), a)
        u = vsub(p, a)
        return _ratio(_cross_norm(u, d), _norm(u) * _norm(d))
    kind = inst.internals[target][0]
    if kind in ("line", "segment"):
        base, d = inst.line(target)
        u = vsub(p, base)
        return _ratio(_cross_norm(u, d), _norm(u) * _norm(d))
    center, r2 = inst.circle(target)
    u = vsub(p, center)
    return _ratio(float(vdot(u, u)) - float(r2), float(r2))


def eval_predicate_numeric(pred: Predicate, inst: Instance,
                           tol: float = DEFAULT_TOL,
                           alignment: dict | None = None) -> bool:
    return predicate_residual(pred, inst, alignment) <= tol


def eval_statement_numeric(stmt: Statement, inst: Instance,
                           tol: float = DEFAULT_TOL,
                           alignment: dict | None = None) -> bool:
    return eval_predicate_numeric(stmt.predicate, inst, tol, alignment)


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

def eval_measure_atom(atom: MeasureAtom, inst: Instance,
                      alignment: dict | None = None) -> float:
    pts = [inst.point(p) for p in atom.points]
    if atom.kind == "dist":
        # along a shared carrier, length is the signed projection on it
        if alignment:
            carrier = alignment.get(frozenset(atom.points))
            if carrier is not None:
                _base, d = inst.line(carrier)
                return float(vdot(vsub(pts[1], pts[0]), d)) / _norm(d)
        return _norm(vsub(pts[1], pts[0]))
    if atom.kind == "area":
        u, v = vsub(pts[1], pts[0]), vsub(pts[2], pts[0])
        return 0.5 * float(cross2(u, v))
    if atom.kind == "circumradius":
        a = _norm(vsub(pts[1], pts[2]))
        b = _norm(vsub(pts[0], pts[2]))
        c = _norm(vsub(pts[0], pts[1]))
        u, v = vsub(pts[1], pts[0]), vsub(pts[2], pts[0])
        area = 0.5 * abs(float(cross2(u, v)))
        if area == 0.0:
            return math.inf
        return a * b * c / (4.0 * area)
    raise AssertionError(f"unhandled measure {atom.kind}")


def eval_measure_expr(expr: MeasureExpr, inst: Instance,
                      alignment: dict | None = None) -> float:
    return sum(float(coeff) * eval_measure_atom(atom, inst, alignment)
               for coeff, atom in expr.terms)


# ---------------------------------------------------------------------------
# per-step defining-relation residuals
# ---------------------------------------------------------------------------

def step_residuals(construction: Construction, inst: Instance) -> dict[str, float]:
    """Largest scale-normalized defining-relation residual per step."""
    out: dict[str, float] = {}
    fs = inst.figure_scale()
    for step in construction.steps:
        out[step.id] = _step_residual(step, inst, fs)
    return out


def _incidence(p, base, d) -> float:
    u = vsub(p, base)
    return _ratio(_cross_norm(u, d), _norm(u) * _norm(d))


def _step_residual(step, inst: Instance, fs: float) -> float:
    kind = step.kind
    args = step.args
    P = inst.point
    if kind in ("free_point", "fixed_point", "line", "segment",
                "circle_center_point", "circle_diameter",
                "perpendicular_line", "parallel_line"):
        return 0.0
    me = P(step.id) if inst.internals[step.id][0] == "point" else None
    if kind == "midpoint":
        gap = vsub(vscale(2, me), vadd(P(args[0]), P(args[1])))
        return _ratio(_norm(gap), fs)
    if kind == "point_on_line":
        base, d = inst.line(args[0])
        return _incidence(me, base, d)
    if kind == "point_on_circle":
        center, r2 = inst.circle(args[0])
        u = vsub(me, center)
        return _ratio(float(vdot(u, u)) - float(r2), float(r2))
    if kind == "intersect_lines":
        r = 0.0
        for lid in args:
            base, d = inst.line(lid)
            r = max(r, _incidence(me, base, d))
        return r
    if kind == "intersect_line_circle":
        base, d = inst.line(args[0])
        center, r2 = inst.circle(args[1])
        u = vsub(me, center)
        return max(_incidence(me, base, d),
                   _ratio(float(vdot(u, u)) - float(r2), float(r2)))
    if kind == "foot_of_perpendicular":
        base, d = inst.line(args[1])
        u = vsub(me, P(args[0]))
        perp = _ratio(float(vdot(u, d)), _norm(u) * _norm(d))
        return max(_incidence(me, base, d), perp)
    if kind == "reflect_point":
        about = inst.internals[args[1]]
        if about[0] == "point":
            gap = vsub(vadd(me, P(args[0])), vscale(2, about[1]))
            return _ratio(_norm(gap), fs)
        base, d = inst.line(args[1])
        mid = vscale(0.5, vadd(me, P(args[0])))
        u = vsub(me, P(args[0]))
        perp = _ratio(float(vdot(u, d)), (_norm(u) + 1e-300) * _norm(d))
        return max(_incidence(mid, base, d), perp)
    if kind == "rotate90":
        p, o = P(args[0]), P(args[1])
        gap = vsub(vsub(me, o), rot90(vsub(p, o), args[2]))
        return _ratio(_norm(gap), fs)
    if kind == "divide_segment":
        a, b = P(args[0]), P(args[1])
        i, n = args[2], args[3]
        gap = vsub(vscale(n, vsub(me, a)), vscale(i, vsub(b, a)))
        return _ratio(_norm(gap), n * fs)
    raise AssertionError(f"unhandled step kind {kind}")
