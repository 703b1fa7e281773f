"""Envelope computation against resultant-based elimination oracles.

Each expected envelope below is derived independently of the production
code: the parameter is eliminated with sympy resultants (plus the bordered
Jacobian tangency condition for constrained parameter pairs), and the
classical closed forms are verified by hand-expansion. The production
module must reproduce the frozen factors exactly.
"""
from __future__ import annotations

import pytest
import sympy as sp

from mechgeo.construction.parser import parse
from mechgeo.poly import Polynomial
from mechgeo.reason.envelope import (NoEnvelopeError, envelope,
                                     envelope_from_family)

ASTROID = ("x^6 + 3*x^4*y^2 + 3*x^2*y^4 + y^6 - 3*x^4 + 21*x^2*y^2 "
           "- 3*y^4 + 3*x^2 + 3*y^2 - 1")

PEDAL_LINE = """
point O = fixed(0, 0)
point U = fixed(1, 0)
point V = fixed(0, 1)
circle k = circle_center_point(O, U)
point P = point_on_circle(k)
line xaxis = line(O, U)
line yaxis = line(O, V)
point A = foot_of_perpendicular(P, xaxis)
point B = foot_of_perpendicular(P, yaxis)
line l = line(A, B)
"""


def _poly_factors(expr):
    """Squarefree irreducible sympy factors of an elimination result."""
    return [f for f, _ in sp.factor_list(sp.expand(expr))[1]]


def test_unit_circle_family_oracle_and_envelope():
    x, y, t = sp.symbols("x y t")
    family = (x - t) ** 2 + y ** 2 - 1
    eliminated = sp.resultant(family, sp.diff(family, t), t)
    assert set(map(sp.expand, _poly_factors(eliminated))) \
        >= {sp.expand(y - 1), sp.expand(y + 1)}

    px, py, pt = (Polynomial.var(v) for v in ("x", "y", "t"))
    one = Polynomial.const(1)
    r = envelope_from_family((px - pt) ** 2 + py ** 2 - one, [], ["t"])
    assert [(f["equation"], f["degenerate"]) for f in r.factors] == [
        ("y + 1", False), ("y - 1", False)]


def test_tangent_parabola_family_oracle_and_envelope():
    x, y, t = sp.symbols("x y t")
    family = y - t * x + t ** 2
    eliminated = sp.resultant(family, sp.diff(family, t), t)
    assert sp.expand(eliminated) == sp.expand(-(x ** 2 - 4 * y))

    px, py, pt = (Polynomial.var(v) for v in ("x", "y", "t"))
    r = envelope_from_family(py - pt * px + pt ** 2, [], ["t"])
    assert [(f["equation"], f["degenerate"]) for f in r.factors] == [
        ("x^2 - 4*y", False)]


def test_sliding_segment_oracle_and_envelope():
    x, y, a, b = sp.symbols("x y a b")
    family = b * x + a * y - a * b
    constraint = a ** 2 + b ** 2 - 1
    jac = sp.Matrix([[sp.diff(family, a), sp.diff(family, b)],
                     [sp.diff(constraint, a), sp.diff(constraint, b)]]).det()
    r1 = sp.resultant(family, jac, a)
    r2 = sp.resultant(family, constraint, a)
    eliminated = sp.resultant(r1, r2, b)
    astroid_closed = (x ** 2 + y ** 2 - 1) ** 3 + 27 * x ** 2 * y ** 2
    assert any(sp.expand(f - sp.expand(astroid_closed)) == 0
               or sp.expand(f + sp.expand(astroid_closed)) == 0
               for f in _poly_factors(eliminated))

    px, py, pa, pb = (Polynomial.var(v) for v in ("x", "y", "a", "b"))
    one = Polynomial.const(1)
    r = envelope_from_family(pb * px + pa * py - pa * pb,
                             [pa ** 2 + pb ** 2 - one], ["a", "b"])
    assert [(f["equation"], f["degenerate"]) for f in r.factors] == [
        (ASTROID, False)]


def test_pedal_line_construction_envelope_is_astroid():
    r = envelope(parse(PEDAL_LINE), "l")
    assert [(f["equation"], f["degenerate"]) for f in r.factors] == [
        (ASTROID, False)]


def test_envelope_errors():
    px, py, pt = (Polynomial.var(v) for v in ("x", "y", "t"))
    # a family independent of the output variables has no envelope
    with pytest.raises(NoEnvelopeError):
        envelope_from_family(pt ** 2 - Polynomial.const(1), [], ["t"])
    # parameter count must exceed constraint count by exactly one
    with pytest.raises(ValueError):
        envelope_from_family(py - pt * px, [pt - Polynomial.const(1)], ["t"])
