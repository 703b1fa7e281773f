"""Numeric instances of a construction.

Free points draw exact rational coordinates from the grid {k/16 : |k| <= 160};
every step with a rational closed form is evaluated exactly; square roots
(line-circle intersections) fall back to floats. Degenerate draws (parallel
lines asked to intersect, coincident defining points, ...) trigger a reseed
of the offending step's free ancestors, up to a fixed retry budget.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .model import STEP_SCHEMAS, Construction, Step

GRID_DENOMINATOR = 16
GRID_STEPS = 160  # grid spans [-10, 10]
RESEED_BUDGET = 32


class UnsatisfiableInstance(RuntimeError):
    """No non-degenerate instance found within the retry budget."""

    def __init__(self, step_id: str, reason: str):
        self.step_id = step_id
        self.reason = reason
        super().__init__(f"step '{step_id}': {reason}")


class PinError(ValueError):
    """A pinned coordinate was supplied for something not a free point."""


# ---------------------------------------------------------------------------
# exact/float vector helpers (tuples of Fraction or float)
# ---------------------------------------------------------------------------

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a):
    return tuple(k * x for x in a)


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def rot90(a, sign=1):
    return (-sign * a[1], sign * a[0])


def is_zero_vec(a, scale=None) -> bool:
    if all(isinstance(x, Fraction) or isinstance(x, int) for x in a):
        return all(x == 0 for x in a)
    norm = math.sqrt(sum(float(x) * float(x) for x in a))
    ref = scale if scale else 1.0
    return norm <= 1e-12 * max(ref, 1.0)


def near_zero(x, scale=1.0) -> bool:
    if isinstance(x, (Fraction, int)):
        return x == 0
    return abs(x) <= 1e-12 * max(scale, 1.0)


# ---------------------------------------------------------------------------
# instance
# ---------------------------------------------------------------------------

@dataclass
class Instance:
    seed: int
    dimension: int
    # id -> ("point", coords) | ("line", base, dir) | ("segment", a, b)
    #     | ("circle", center, r_squared, through)
    internals: dict[str, tuple] = field(default_factory=dict)

    def point(self, pid: str):
        kind, *rest = self.internals[pid]
        if kind != "point":
            raise KeyError(f"'{pid}' is a {kind}, not a point")
        return rest[0]

    def line(self, lid: str):
        kind, *rest = self.internals[lid]
        if kind == "line":
            return rest[0], rest[1]
        if kind == "segment":
            a, b = rest
            return a, vsub(b, a)
        raise KeyError(f"'{lid}' is a {kind}, not a line")

    def circle(self, cid: str):
        kind, *rest = self.internals[cid]
        if kind != "circle":
            raise KeyError(f"'{cid}' is a {kind}, not a circle")
        return rest[0], rest[1]

    def figure_scale(self) -> float:
        """Largest pairwise point distance; 1.0 for figures without extent."""
        pts = [tuple(float(x) for x in data[1])
               for data in self.internals.values() if data[0] == "point"]
        best = 0.0
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = math.dist(pts[i], pts[j])
                best = max(best, d)
        return best if best > 0 else 1.0

    def render_coordinates(self) -> dict[str, tuple[float, ...]]:
        """Flat float tuples for the wire: point (x, y[, z]); segment both
        endpoints; line base then direction; circle center then radius."""
        out: dict[str, tuple[float, ...]] = {}
        for oid, data in self.internals.items():
            kind = data[0]
            if kind == "point":
                out[oid] = tuple(float(x) for x in data[1])
            elif kind == "segment":
                out[oid] = tuple(float(x) for x in data[1] + data[2])
            elif kind == "line":
                out[oid] = tuple(float(x) for x in data[1] + data[2])
            elif kind == "circle":
                r = math.sqrt(max(float(data[2]), 0.0))
                out[oid] = tuple(float(x) for x in data[1]) + (r,)
        return out


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def _grid_value(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-GRID_STEPS, GRID_STEPS), GRID_DENOMINATOR)


class _Degenerate(Exception):
    def __init__(self, step_id: str, reason: str):
        self.step_id = step_id
        self.reason = reason
        super().__init__(reason)


def _direct_refs(step: Step) -> tuple[str, ...]:
    _, schema = STEP_SCHEMAS[step.kind]
    if schema == ("rat*",):
        return ()
    return tuple(a for a, want in zip(step.args, schema)
                 if want not in ("int",))


def free_ancestors(construction: Construction, step_id: str) -> tuple[str, ...]:
    """Ancestor objects of `step_id` that carry randomness (free points and
    on-line/on-circle points), including the step itself when applicable."""
    by_id = {s.id: s for s in construction.steps}
    seen: set[str] = set()
    out: list[str] = []

    def walk(oid: str) -> None:
        if oid in seen:
            return
        seen.add(oid)
        step = by_id[oid]
        if step.kind in ("free_point", "point_on_line", "point_on_circle"):
            out.append(oid)
        for ref in _direct_refs(step):
            walk(ref)

    walk(step_id)
    return tuple(out)


def sample_instance(construction: Construction, seed: int,
                    pinned: dict[str, tuple] | None = None) -> Instance:
    """Deterministic numeric witness of the construction for this seed."""
    dim = construction.dimension
    by_id = {s.id: s for s in construction.steps}
    pinned = dict(pinned or {})
    for pid in pinned:
        if pid not in by_id or by_id[pid].kind != "free_point":
            raise PinError(f"'{pid}' is not a free point; cannot pin it")
        coords = tuple(Fraction(str(c)) if not isinstance(c, Fraction) else c
                       for c in pinned[pid])
        if len(coords) != dim:
            raise PinError(f"'{pid}' needs {dim} pinned coordinates")
        pinned[pid] = coords

    rng = random.Random(seed)
    draws: dict[str, tuple] = {}  # id -> drawn coordinates / parameter

    last_error: _Degenerate | None = None
    for _attempt in range(RESEED_BUDGET + 1):
        try:
            return _evaluate(construction, seed, dim, pinned, draws, rng)
        except _Degenerate as exc:
            last_error = exc
            ancestors = free_ancestors(construction, exc.step_id)
            redrawable = [a for a in ancestors if a not in pinned]
            if not redrawable:
                raise UnsatisfiableInstance(exc.step_id, exc.reason) from None
            for a in redrawable:
                draws.pop(a, None)
    assert last_error is not None
    raise UnsatisfiableInstance(last_error.step_id, last_error.reason)


def _evaluate(construction: Construction, seed: int, dim: int,
              pinned: dict, draws: dict, rng: random.Random) -> Instance:
    inst = Instance(seed=seed, dimension=dim)
    data = inst.internals
    for step in construction.steps:
        data[step.id] = _eval_step(step, inst, dim, pinned, draws, rng)
    return inst


def _eval_step(step: Step, inst: Instance, dim: int,
               pinned: dict, draws: dict, rng: random.Random) -> tuple:
    sid = step.id
    args = step.args
    kind = step.kind
    P = inst.point
    if kind == "free_point":
        if sid in pinned:
            return ("point", pinned[sid])
        if sid not in draws:
            draws[sid] = tuple(_grid_value(rng) for _ in range(dim))
        return ("point", draws[sid])
    if kind == "fixed_point":
        return ("point", tuple(args))
    if kind == "midpoint":
        a, b = P(args[0]), P(args[1])
        return ("point", vscale(Fraction(1, 2), vadd(a, b)))
    if kind in ("line", "segment"):
        a, b = P(args[0]), P(args[1])
        if is_zero_vec(vsub(b, a), scale=inst.figure_scale()):
            raise _Degenerate(sid, "defining points coincide")
        if kind == "segment":
            return ("segment", a, b)
        return ("line", a, vsub(b, a))
    if kind == "circle_center_point":
        o, a = P(args[0]), P(args[1])
        rv = vsub(a, o)
        if is_zero_vec(rv, scale=inst.figure_scale()):
            raise _Degenerate(sid, "center and through-point coincide")
        return ("circle", o, vdot(rv, rv), a)
    if kind == "circle_diameter":
        a, b = P(args[0]), P(args[1])
        if is_zero_vec(vsub(b, a), scale=inst.figure_scale()):
            raise _Degenerate(sid, "diameter endpoints coincide")
        center = vscale(Fraction(1, 2), vadd(a, b))
        rv = vsub(a, center)
        return ("circle", center, vdot(rv, rv), a)
    if kind == "point_on_line":
        base, d = inst.line(args[0])
        if sid not in draws:
            draws[sid] = (_grid_value(rng),)
        t = draws[sid][0]
        return ("point", vadd(base, vscale(t, d)))
    if kind == "point_on_circle":
        center, _r2 = inst.circle(args[0])
        through = inst.internals[args[0]][3]
        v = vsub(through, center)
        if sid not in draws:
            draws[sid] = (_grid_value(rng),)
        t = draws[sid][0]
        den = 1 + t * t
        c, s = (1 - t * t) / den, 2 * t / den
        rotated = (c * v[0] - s * v[1], s * v[0] + c * v[1])
        return ("point", vadd(center, rotated))
    if kind == "intersect_lines":
        return ("point", _intersect_lines(sid, inst, args[0], args[1], dim))
    if kind == "intersect_line_circle":
        return ("point", _intersect_line_circle(sid, inst, args[0], args[1],
                                                args[2]))
    if kind == "foot_of_perpendicular":
        p = P(args[0])
        base, d = inst.line(args[1])
        dd = vdot(d, d)
        if near_zero(dd, inst.figure_scale() ** 2):
            raise _Degenerate(sid, "carrier line is degenerate")
        t = vdot(vsub(p, base), d) / dd
        return ("point", vadd(base, vscale(t, d)))
    if kind == "perpendicular_line":
        p = P(args[0])
        _base, d = inst.line(args[1])
        return ("line", p, rot90(d))
    if kind == "parallel_line":
        p = P(args[0])
        _base, d = inst.line(args[1])
        return ("line", p, d)
    if kind == "reflect_point":
        p = P(args[0])
        about = inst.internals[args[1]]
        if about[0] == "point":
            return ("point", vsub(vscale(2, about[1]), p))
        base, d = inst.line(args[1])
        dd = vdot(d, d)
        if near_zero(dd, inst.figure_scale() ** 2):
            raise _Degenerate(sid, "mirror line is degenerate")
        t = vdot(vsub(p, base), d) / dd
        foot = vadd(base, vscale(t, d))
        return ("point", vsub(vscale(2, foot), p))
    if kind == "rotate90":
        p, o = P(args[0]), P(args[1])
        return ("point", vadd(o, rot90(vsub(p, o), args[2])))
    if kind == "divide_segment":
        a, b = P(args[0]), P(args[1])
        i, n = args[2], args[3]
        return ("point", vadd(a, vscale(Fraction(i, n), vsub(b, a))))
    raise AssertionError(f"unhandled step kind {kind}")


def _intersect_lines(sid: str, inst: Instance, l1: str, l2: str, dim: int):
    b1, d1 = inst.line(l1)
    b2, d2 = inst.line(l2)
    scale = inst.figure_scale()
    if dim == 2:
        den = cross2(d1, d2)
        if near_zero(den, scale * scale):
            raise _Degenerate(sid, "lines are parallel or identical")
        t = cross2(vsub(b2, b1), d2) / den
        return vadd(b1, vscale(t, d1))
    # 3D: X = b1 + t*d1 with (X - b2) x d2 = 0; solve one component, check rest
    rhs = cross3(vsub(b2, b1), d2)
    coef = cross3(d1, d2)
    if is_zero_vec(coef, scale * scale):
        raise _Degenerate(sid, "lines are parallel or identical")
    pick = max(range(3), key=lambda i: abs(float(coef[i])))
    t = rhs[pick] / coef[pick]
    x = vadd(b1, vscale(t, d1))
    residual = cross3(vsub(x, b2), d2)
    if not is_zero_vec(residual, scale * scale):
        raise _Degenerate(sid, "lines do not meet")
    return x


def _intersect_line_circle(sid: str, inst: Instance, lid: str, cid: str,
                           branch: int):
    base, d = inst.line(lid)
    center, r2 = inst.circle(cid)
    a = vdot(d, d)
    if near_zero(a, inst.figure_scale() ** 2):
        raise _Degenerate(sid, "carrier line is degenerate")
    u = vsub(base, center)
    b = 2 * vdot(d, u)
    c = vdot(u, u) - r2
    disc = float(b * b - 4 * a * c)
    if disc < 0:
        raise _Degenerate(sid, "line misses the circle")
    root = math.sqrt(disc)
    af, bf = float(a), float(b)
    t_low = (-bf - root) / (2 * af)
    t_high = (-bf + root) / (2 * af)
    t = t_low if branch == 0 else t_high
    return vadd(tuple(float(x) for x in base),
                vscale(t, tuple(float(x) for x in d)))
