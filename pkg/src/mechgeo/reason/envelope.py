"""Envelope of a one-parameter family of curves.

A family F(x, y; v) = 0 whose parameters v are tied by constraints
g_1 = ... = g_m = 0 (one residual degree of freedom) envelopes the curve
obtained by adjoining the vanishing of the bordered Jacobian determinant
det d(F, g_1..g_m)/dv and eliminating every parameter. The result is
factored into components, each checked for consistency with the family.
"""
from __future__ import annotations

import time
from typing import Sequence

from ..algebra import algebraize, nondegeneracy_factors
from ..algebra.algebraize import _sub, cross_components
from ..construction.model import Construction
from ..poly import Ideal, Polynomial, eliminate
from .budget import Budget
from .results import EnvelopeResult

OUT_VARS = ("x", "y")


class NoEnvelopeError(ValueError):
    """Elimination is trivial: the family has no envelope component."""


def _det(matrix: list[list[Polynomial]]) -> Polynomial:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = Polynomial.zero()
    for col in range(n):
        minor = [[matrix[r][c] for c in range(n) if c != col]
                 for r in range(1, n)]
        term = matrix[0][col] * _det(minor)
        total = total + (term if col % 2 == 0 else -term)
    return total


def envelope_from_family(family: Polynomial,
                         constraints: Sequence[Polynomial],
                         params: Sequence[str],
                         out_vars: Sequence[str] = OUT_VARS,
                         *, timeout_ms: int | None = None) -> EnvelopeResult:
    """Envelope of {family = 0} as the parameters move on the constraints."""
    started = time.monotonic()
    budget = Budget(timeout_ms)
    params = list(params)
    if len(params) != len(constraints) + 1:
        raise ValueError(
            "need exactly one residual degree of freedom: "
            f"{len(params)} parameters vs {len(constraints)} constraints")
    rows = [[family.diff(v) for v in params]]
    for g in constraints:
        rows.append([g.diff(v) for v in params])
    jacobian = _det(rows)

    system = [family, *constraints, jacobian]
    ambient = sorted({v for p in system for v in p.variables()}
                     | set(out_vars) | set(params))
    joint = Ideal(tuple(system), variables=ambient)
    projected = eliminate(joint, set(params), limits=budget.limits())
    factors = []
    for f in nondegeneracy_factors(projected.generators):
        if not (set(f.variables()) & set(out_vars)):
            continue  # constraint-only consequence, not a curve
        extended = Ideal(joint.generators + (f,), variables=ambient)
        degenerate = extended.is_unit(limits=budget.limits())
        factors.append({"equation": f.canonical_str(),
                        "degenerate": degenerate})
    if not factors:
        raise NoEnvelopeError("no envelope: elimination is trivial")
    return EnvelopeResult(family=family.canonical_str(), factors=factors,
                          elapsed_ms=(time.monotonic() - started) * 1000.0)


def envelope(construction: Construction, curve_object: str,
             *, timeout_ms: int | None = None) -> EnvelopeResult:
    """Envelope of a constructed line or circle as the construction's single
    degree of freedom moves."""
    if construction.dimension != 2:
        raise ValueError("envelopes are computed for planar constructions")
    model = algebraize(construction, wlog=False)
    variables = list(model.free_vars) + list(model.dep_vars)
    if set(OUT_VARS) & set(variables):
        raise ValueError("output variables collide with construction ids")
    if len(variables) != len(model.hypotheses) + 1:
        raise ValueError(
            "the construction must have exactly one degree of freedom "
            f"(found {len(variables)} coordinates, "
            f"{len(model.hypotheses)} defining equations)")
    point = tuple(Polynomial.var(v) for v in OUT_VARS)
    if curve_object in model.lines:
        carrier = model.lines[curve_object]
        family = cross_components(_sub(point, carrier.base),
                                  carrier.direction)[0]
    elif curve_object in model.circles:
        family = model.circles[curve_object].membership(point)
    else:
        raise ValueError(f"'{curve_object}' is not a line or circle")
    result = envelope_from_family(family, list(model.hypotheses), variables,
                                  timeout_ms=timeout_ms)
    result.family = curve_object
    return result
