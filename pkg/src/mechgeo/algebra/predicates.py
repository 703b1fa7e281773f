"""Translate geometric predicates into polynomials over a compiled model.

Each predicate becomes a conjunction (tuple) of polynomials that vanish
exactly when the predicate holds. Ratio claims about measured quantities
need auxiliary measure variables and are handled by the measures module.
"""
from __future__ import annotations

from ..construction.model import Predicate, SegRef
from ..poly import Polynomial
from .algebraize import (AlgebraicModel, PointExpr, collinearity,
                         cross_components, _dot, _sqdist, _sub)


class UntranslatablePredicate(ValueError):
    pass


def _seg_vec(model: AlgebraicModel, seg: SegRef) -> PointExpr:
    return _sub(model.point(seg.b), model.point(seg.a))


def _det4(rows) -> Polynomial:
    """Cofactor expansion of a 4x4 matrix of polynomials."""

    def det3(r):
        (a, b, c), (d, e, f), (g, h, i) = r
        return (a * (e * i - f * h)
                - b * (d * i - f * g)
                + c * (d * h - e * g))

    total = Polynomial.zero()
    for j in range(4):
        minor = [[rows[i][k] for k in range(4) if k != j]
                 for i in range(1, 4)]
        term = rows[0][j] * det3(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def translate_predicate(pred: Predicate,
                        model: AlgebraicModel) -> tuple[Polynomial, ...]:
    kind = pred.kind
    P = model.point

    if kind == "collinear":
        a, b, c = (P(x) for x in pred.args)
        return cross_components(_sub(b, a), _sub(c, a))

    if kind == "parallel":
        return cross_components(_seg_vec(model, pred.args[0]),
                                _seg_vec(model, pred.args[1]))

    if kind == "perpendicular":
        return (_dot(_seg_vec(model, pred.args[0]),
                     _seg_vec(model, pred.args[1])),)

    if kind == "equal_length":
        s1, s2 = pred.args
        return (_sqdist(P(s1.a), P(s1.b)) - _sqdist(P(s2.a), P(s2.b)),)

    if kind == "concyclic":
        one = Polynomial.const(1)
        rows = []
        for pid in pred.args:
            x, y = P(pid)
            rows.append([x, y, x * x + y * y, one])
        return (_det4(rows),)

    if kind == "point_on":
        pt = P(pred.args[0])
        target = pred.args[1]
        if isinstance(target, SegRef):
            base = P(target.a)
            return collinearity(pt, base, _sub(P(target.b), base))
        if target in model.lines:
            carrier = model.lines[target]
            return collinearity(pt, carrier.base, carrier.direction)
        if target in model.circles:
            return (model.circles[target].membership(pt),)
        raise UntranslatablePredicate(f"'{target}' has no carrier equation")

    if kind == "coincide":
        return tuple(x for x in _sub(P(pred.args[0]), P(pred.args[1])))

    if kind == "midpoint_of":
        m, a, b = (P(x) for x in pred.args)
        two = Polynomial.const(2)
        return tuple(two * mi - ai - bi for mi, ai, bi in zip(m, a, b))

    if kind == "geom_mean":
        d0, d1, d2 = (_sqdist(P(s.a), P(s.b)) for s in pred.args)
        return (d0 * d0 - d1 * d2,)

    if kind == "measure_ratio":
        raise UntranslatablePredicate(
            "ratio claims need measure variables; use prepare_statement")

    raise UntranslatablePredicate(f"unknown predicate kind '{kind}'")
