"""Compile a construction into polynomials over exact rationals.

Every point gets coordinate variables (x_<id>, y_<id>[, z_<id>]) unless its
coordinates are forced (fixed points, and the first two free points when the
with-loss-of-nothing placement is applied). Each derived-point step emits its
documented defining polynomials; straight and circular carriers stay symbolic
(base/direction and center/radius expressions) so that composed objects like
perpendiculars of perpendiculars need no extra variables. Nondegeneracy
polynomials are collected separately — the reasoning layer saturates by them
instead of assuming them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..construction.model import Construction, Step
from ..poly import Polynomial

COORD_PREFIXES = ("x", "y", "z")


def coord_var(axis: int, pid: str) -> str:
    return f"{COORD_PREFIXES[axis]}_{pid}"


PointExpr = tuple  # tuple of Polynomial, one per axis


@dataclass(frozen=True)
class LineCarrier:
    base: PointExpr
    direction: PointExpr


@dataclass(frozen=True)
class CircleCarrier:
    kind: str        # "center_point" | "diameter"
    p: PointExpr     # center            | first endpoint
    q: PointExpr     # through-point     | second endpoint

    def center(self) -> PointExpr:
        if self.kind == "center_point":
            return self.p
        half = Polynomial.const(Fraction(1, 2))
        return tuple((a + b) * half for a, b in zip(self.p, self.q))

    def radius_squared(self) -> Polynomial:
        if self.kind == "center_point":
            return _sqdist(self.p, self.q)
        quarter = Polynomial.const(Fraction(1, 4))
        return _sqdist(self.p, self.q) * quarter

    def membership(self, x: PointExpr) -> Polynomial:
        """Polynomial vanishing exactly when x lies on the circle."""
        if self.kind == "center_point":
            return _sqdist(x, self.p) - _sqdist(self.q, self.p)
        # diameter form: the angle at x subtending pq is right
        return _dot(_sub(x, self.p), _sub(x, self.q))


@dataclass
class AlgebraicModel:
    construction: Construction
    dimension: int
    wlog_applied: bool
    coords: dict[str, PointExpr] = field(default_factory=dict)
    lines: dict[str, LineCarrier] = field(default_factory=dict)
    circles: dict[str, CircleCarrier] = field(default_factory=dict)
    free_vars: tuple[str, ...] = ()
    dep_vars: tuple[str, ...] = ()
    hypotheses: tuple[Polynomial, ...] = ()
    nondegeneracy: tuple[Polynomial, ...] = ()
    # steps whose nondegeneracy polynomial is identically zero: they are
    # degenerate in every instance, so the construction has no model
    degenerate_steps: tuple[str, ...] = ()

    def point(self, pid: str) -> PointExpr:
        return self.coords[pid]

    def line(self, lid: str) -> LineCarrier:
        if lid in self.lines:
            return self.lines[lid]
        raise KeyError(f"'{lid}' is not a straight carrier")

    def variables(self) -> tuple[str, ...]:
        return self.free_vars + self.dep_vars

    def assignment_for(self, instance) -> dict:
        """Map coordinate variables to their numeric instance values."""
        out = {}
        for pid, exprs in self.coords.items():
            values = instance.point(pid)
            for axis, e in enumerate(exprs):
                if e.is_constant():
                    continue
                name = coord_var(axis, pid)
                if name in e.variables():
                    out[name] = values[axis]
        return out


# -- vector algebra over Polynomial tuples ----------------------------------

def _sub(a: PointExpr, b: PointExpr) -> PointExpr:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: PointExpr, b: PointExpr) -> PointExpr:
    return tuple(x + y for x, y in zip(a, b))


def _scale(k, a: PointExpr) -> PointExpr:
    kp = Polynomial.const(k) if not isinstance(k, Polynomial) else k
    return tuple(kp * x for x in a)


def _dot(a: PointExpr, b: PointExpr) -> Polynomial:
    total = Polynomial.zero()
    for x, y in zip(a, b):
        total = total + x * y
    return total


def _sqdist(a: PointExpr, b: PointExpr) -> Polynomial:
    return _dot(_sub(a, b), _sub(a, b))


def _rot90(a: PointExpr, sign: int = 1) -> PointExpr:
    s = Polynomial.const(sign)
    return (-(s * a[1]), s * a[0])


def cross_components(a: PointExpr, b: PointExpr) -> tuple[Polynomial, ...]:
    """2D: the scalar cross product; 3D: all three components."""
    if len(a) == 2:
        return (a[0] * b[1] - a[1] * b[0],)
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def collinearity(x: PointExpr, base: PointExpr, d: PointExpr) -> tuple[Polynomial, ...]:
    return cross_components(_sub(x, base), d)


# -- compilation -------------------------------------------------------------

def algebraize(construction: Construction, wlog: bool = True) -> AlgebraicModel:
    dim = construction.dimension
    has_fixed = any(s.kind == "fixed_point" for s in construction.steps)
    apply_wlog = wlog and not has_fixed

    model = AlgebraicModel(construction=construction, dimension=dim,
                           wlog_applied=apply_wlog)
    free: list[str] = []
    dep: list[str] = []
    hyps: list[Polynomial] = []
    nondeg: list[Polynomial] = []
    degenerate: list[str] = []
    free_points_seen = 0

    def fresh_point(pid: str, into: list[str]) -> PointExpr:
        names = [coord_var(axis, pid) for axis in range(dim)]
        into.extend(names)
        return tuple(Polynomial.var(n) for n in names)

    for step in construction.steps:
        kind = step.kind
        if kind == "free_point":
            if apply_wlog and free_points_seen == 0:
                model.coords[step.id] = tuple(Polynomial.zero()
                                              for _ in range(dim))
            elif apply_wlog and free_points_seen == 1:
                first = coord_var(0, step.id)
                free.append(first)
                model.coords[step.id] = (Polynomial.var(first),) + tuple(
                    Polynomial.zero() for _ in range(dim - 1))
            else:
                model.coords[step.id] = fresh_point(step.id, free)
            free_points_seen += 1
        elif kind == "fixed_point":
            model.coords[step.id] = tuple(Polynomial.const(c)
                                          for c in step.args)
        else:
            before = len(nondeg)
            _emit_step(model, step, dim, free, dep, hyps, nondeg)
            if any(p.is_zero() for p in nondeg[before:]):
                degenerate.append(step.id)

    model.degenerate_steps = tuple(degenerate)
    model.free_vars = tuple(free)
    model.dep_vars = tuple(dep)
    model.hypotheses = tuple(hyps)
    seen = set()
    uniq = []
    for p in nondeg:
        key = p.primitive().canonical_str()
        if key not in seen and not p.is_zero():
            seen.add(key)
            uniq.append(p)
    model.nondegeneracy = tuple(uniq)
    return model


def _emit_step(model: AlgebraicModel, step: Step, dim: int,
               free: list, dep: list, hyps: list, nondeg: list) -> None:
    kind = step.kind
    P = model.point

    def fresh(pid: str, split_free: bool = False) -> PointExpr:
        names = [coord_var(axis, pid) for axis in range(dim)]
        if split_free:
            free.append(names[0])
            dep.extend(names[1:])
        else:
            dep.extend(names)
        return tuple(Polynomial.var(n) for n in names)

    if kind == "midpoint":
        a, b = P(step.args[0]), P(step.args[1])
        m = fresh(step.id)
        two = Polynomial.const(2)
        hyps.extend(two * mi - ai - bi for mi, ai, bi in zip(m, a, b))
        model.coords[step.id] = m
    elif kind in ("line", "segment"):
        a, b = P(step.args[0]), P(step.args[1])
        model.lines[step.id] = LineCarrier(a, _sub(b, a))
        nondeg.append(_sqdist(a, b))
    elif kind == "circle_center_point":
        o, a = P(step.args[0]), P(step.args[1])
        model.circles[step.id] = CircleCarrier("center_point", o, a)
        nondeg.append(_sqdist(o, a))
    elif kind == "circle_diameter":
        a, b = P(step.args[0]), P(step.args[1])
        model.circles[step.id] = CircleCarrier("diameter", a, b)
        nondeg.append(_sqdist(a, b))
    elif kind == "point_on_line":
        carrier = model.line(step.args[0])
        x = fresh(step.id, split_free=True)
        hyps.extend(collinearity(x, carrier.base, carrier.direction))
        nondeg.append(_dot(carrier.direction, carrier.direction))
        model.coords[step.id] = x
    elif kind == "point_on_circle":
        carrier = model.circles[step.args[0]]
        x = fresh(step.id, split_free=True)
        hyps.append(carrier.membership(x))
        nondeg.append(carrier.radius_squared())
        model.coords[step.id] = x
    elif kind == "intersect_lines":
        l1 = model.line(step.args[0])
        l2 = model.line(step.args[1])
        x = fresh(step.id)
        hyps.extend(collinearity(x, l1.base, l1.direction))
        hyps.extend(collinearity(x, l2.base, l2.direction))
        cross = cross_components(l1.direction, l2.direction)
        if dim == 2:
            nondeg.append(cross[0])
        else:
            nondeg.append(_dot(cross, cross))
        model.coords[step.id] = x
    elif kind == "intersect_line_circle":
        carrier = model.line(step.args[0])
        circ = model.circles[step.args[1]]
        x = fresh(step.id)
        hyps.extend(collinearity(x, carrier.base, carrier.direction))
        hyps.append(circ.membership(x))
        nondeg.append(_dot(carrier.direction, carrier.direction))
        model.coords[step.id] = x
    elif kind == "foot_of_perpendicular":
        p = P(step.args[0])
        carrier = model.line(step.args[1])
        f = fresh(step.id)
        hyps.extend(collinearity(f, carrier.base, carrier.direction))
        hyps.append(_dot(_sub(f, p), carrier.direction))
        nondeg.append(_dot(carrier.direction, carrier.direction))
        model.coords[step.id] = f
    elif kind == "perpendicular_line":
        p = P(step.args[0])
        carrier = model.line(step.args[1])
        model.lines[step.id] = LineCarrier(p, _rot90(carrier.direction))
        nondeg.append(_dot(carrier.direction, carrier.direction))
    elif kind == "parallel_line":
        p = P(step.args[0])
        carrier = model.line(step.args[1])
        model.lines[step.id] = LineCarrier(p, carrier.direction)
        nondeg.append(_dot(carrier.direction, carrier.direction))
    elif kind == "reflect_point":
        p = P(step.args[0])
        about = step.args[1]
        if about in model.coords:  # reflection through a point
            o = model.coords[about]
            r = fresh(step.id)
            two = Polynomial.const(2)
            hyps.extend(ri + pi - two * oi for ri, pi, oi in zip(r, p, o))
            model.coords[step.id] = r
        else:  # mirror across a line, via its auxiliary foot
            carrier = model.line(about)
            foot_id = f"{step.id}__foot"
            f = fresh(foot_id)
            hyps.extend(collinearity(f, carrier.base, carrier.direction))
            hyps.append(_dot(_sub(f, p), carrier.direction))
            nondeg.append(_dot(carrier.direction, carrier.direction))
            r = fresh(step.id)
            two = Polynomial.const(2)
            hyps.extend(ri + pi - two * fi for ri, pi, fi in zip(r, p, f))
            model.coords[step.id] = r
    elif kind == "rotate90":
        p, o = P(step.args[0]), P(step.args[1])
        sign = step.args[2]
        r = fresh(step.id)
        rotated = _rot90(_sub(p, o), sign)
        hyps.extend(ri - oi - vi for ri, oi, vi in zip(r, o, rotated))
        model.coords[step.id] = r
    elif kind == "divide_segment":
        a, b = P(step.args[0]), P(step.args[1])
        i, n = step.args[2], step.args[3]
        x = fresh(step.id)
        ni = Polynomial.const(n)
        hyps.extend(ni * xi - (Polynomial.const(n - i) * ai
                               + Polynomial.const(i) * bi)
                    for xi, ai, bi in zip(x, a, b))
        nondeg.append(_sqdist(a, b))
        model.coords[step.id] = x
    else:
        raise AssertionError(f"unhandled step kind {kind}")
