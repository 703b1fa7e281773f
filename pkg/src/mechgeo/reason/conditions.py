"""Find extra hypotheses under which a failed statement becomes provable.

Projecting the hypotheses-plus-thesis ideal onto the free coordinates yields
polynomials that must vanish whenever the statement holds; their
non-degenerate irreducible factors are candidate missing conditions. Each
candidate is verified by re-proving the statement with the condition added,
so everything reported is certified, not just plausible.
"""
from __future__ import annotations

from typing import Callable

from ..algebra import nondegeneracy_factors
from ..limits import ResourceLimitError
from ..poly import Ideal, eliminate
from .budget import Budget
from .system import StatementSetup


def discover_conditions(setup: StatementSetup, budget: Budget,
                        verify: Callable[[Ideal], bool],
                        max_conditions: int = 4) -> list[dict]:
    """Conditions on the free coordinates that make the theses provable.

    `verify(ideal)` must decide whether the statement's theses hold over the
    given extended hypothesis ideal (the caller supplies the same decision
    routine used for the unconditional proof)."""
    if not setup.free_vars:
        return []
    joint = Ideal(setup.ideal.generators + setup.theses,
                  variables=setup.ideal.variables)
    drop = set(joint.variables) - set(setup.free_vars)
    projected = eliminate(joint, drop, limits=budget.limits())
    if not projected.generators:
        return []

    known_degenerate = {f.primitive().canonical_str() for f in setup.factors}
    candidates = []
    for factor in nondegeneracy_factors(projected.generators):
        if factor.canonical_str() not in known_degenerate:
            candidates.append(factor)

    accepted = []
    for f in candidates:
        if len(accepted) >= max_conditions:
            break
        try:
            extended = Ideal(setup.ideal.generators + (f,),
                             variables=setup.ideal.variables)
            if extended.is_unit(limits=budget.limits()):
                continue  # the condition leaves no nondegenerate instance
            if verify(extended):
                accepted.append({"equation": f.canonical_str(),
                                 "verified": True})
        except ResourceLimitError:
            if budget.remaining_ms() <= 0:
                break
    return accepted
