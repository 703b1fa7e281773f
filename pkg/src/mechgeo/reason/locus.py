"""Locus of a free point under a statement: eliminate everything else.

Joining the statement's thesis polynomials to the saturated hypothesis ideal
and eliminating every variable except the traced point's coordinates yields
the algebraic curve (or surface) the tracer must lie on for the statement to
hold. The result is factored into components; a component consistent with
the hypotheses and nondegeneracy is reported as genuine, the others are
flagged as degenerate artifacts.
"""
from __future__ import annotations

import time

from ..algebra import coord_var, nondegeneracy_factors
from ..construction.model import Construction
from ..poly import Ideal, eliminate
from .budget import Budget
from .results import LocusResult
from .system import ProofSystem

OUT_AXES = ("x", "y", "z")


class TrivialLocusError(ValueError):
    """The statement does not constrain the tracer (zero elimination ideal)."""


def locus_equation(construction: Construction, statement_label: str,
                   tracer: str, *, timeout_ms: int | None = None
                   ) -> LocusResult:
    started = time.monotonic()
    statement = construction.statement_by_label(statement_label)
    budget = Budget(timeout_ms)
    step_kinds = {s.id: s.kind for s in construction.steps}
    if step_kinds.get(tracer) != "free_point":
        raise ValueError(f"tracer '{tracer}' is not a free point")

    dim = construction.dimension
    tracer_vars = [coord_var(i, tracer) for i in range(dim)]
    system = ProofSystem(construction)
    if not set(tracer_vars) <= set(system.model.free_vars):
        # the default placement pinned some tracer coordinate; redo without it
        system = ProofSystem(construction, wlog=False)
    setup = system.statement_setup(statement.predicate, budget)

    joint = Ideal(setup.ideal.generators + setup.theses,
                  variables=setup.ideal.variables)
    drop = set(joint.variables) - set(tracer_vars)
    projected = eliminate(joint, drop, limits=budget.limits())
    if not projected.generators:
        raise TrivialLocusError(
            "trivial locus: the statement does not constrain the tracer")

    axes = {v: OUT_AXES[i] for i, v in enumerate(tracer_vars)}
    factors = []
    for f in nondegeneracy_factors(projected.generators):
        extended = Ideal(joint.generators + (f,), variables=joint.variables)
        degenerate = extended.is_unit(limits=budget.limits())
        factors.append({"equation": f.rename(axes).canonical_str(),
                        "degenerate": degenerate})
    return LocusResult(tracer=tracer, factors=factors,
                       axes=[OUT_AXES[i] for i in range(dim)],
                       elapsed_ms=(time.monotonic() - started) * 1000.0)
