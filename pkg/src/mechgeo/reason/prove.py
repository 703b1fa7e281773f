"""Decide whether a statement holds on every nondegenerate instance.

Verdicts:

* TRUE — every thesis polynomial lies in the radical of the saturated
  hypothesis ideal, and the ideal's dimension equals the number of free
  coordinates (so nondegeneracy did not silently pin the figure).
* FALSE — the nondegeneracy product lies in the radical of hypotheses plus
  theses (no nondegenerate instance satisfies the claim), or an exact
  rational instance refutes it outright.
* TRUE_ON_PARTS — not identically true, but verified extra conditions on
  the free points make it true, or the hypothesis variety is smaller than
  the construction's intended degrees of freedom.
* UNKNOWN — a resource limit interrupted the decision, or every route was
  exhausted without a certificate.
"""
from __future__ import annotations

import time
from fractions import Fraction

from ..algebra import algebraize, translate_predicate
from ..algebra.measures import _atom_key, _atom_sign
from ..construction.model import Construction, MeasureExpr, Statement
from ..construction.sampler import UnsatisfiableInstance, sample_instance
from ..limits import ResourceLimitError
from ..poly import Ideal, Polynomial, dimension, radical_membership
from .budget import Budget
from .conditions import discover_conditions
from .results import (FALSE, TRUE, TRUE_ON_PARTS, UNKNOWN, ProveResult)
from .system import ProofSystem, StatementSetup

COUNTERMODEL_SEEDS = 6


def prove(construction: Construction, statement_label: str | None = None,
          *, wlog: bool = True, timeout_ms: int | None = None
          ) -> list[ProveResult]:
    """Prove one labelled statement, or every statement when no label given."""
    if statement_label is not None:
        statements = [construction.statement_by_label(statement_label)]
    else:
        statements = list(construction.statements)
    if not statements:
        raise ValueError("construction has no statements to prove")
    system = ProofSystem(construction, wlog=wlog)
    return [prove_statement(system, s, Budget(timeout_ms)) for s in statements]


def prove_statement(system: ProofSystem, statement: Statement,
                    budget: Budget) -> ProveResult:
    started = time.monotonic()
    result = ProveResult(statement=statement.label,
                         predicate=statement.predicate.text(),
                         verdict=UNKNOWN)
    try:
        setup = system.statement_setup(statement.predicate, budget)
        result.verdict, result.certificate, result.conditions = _decide(
            system, statement.predicate, setup, budget)
    except ResourceLimitError as e:
        result.verdict = UNKNOWN
        result.certificate = {"reason": "resource_limit", "resource": e.resource,
                              "detail": str(e)}
    result.elapsed_ms = (time.monotonic() - started) * 1000.0
    return result


def _decide(system: ProofSystem, pred, setup: StatementSetup,
            budget: Budget) -> tuple[str, dict, list]:
    H = setup.ideal

    # 1+2. certified truth: radical membership, or the squared identity for
    # ratio claims over sign-definite quantities
    route = _theses_hold(H, setup, budget)
    if route == _REFUTED_BY_SIGN:
        return FALSE, {
            "route": "squared_identity_with_sign_convention",
            "reason": "magnitudes agree but the claimed ratio is negative "
                      "while both quantities are nonnegative",
        }, []
    if route is not None:
        cert = {"route": route,
                "saturated_by": [f.canonical_str() for f in setup.factors]}
        dim = dimension(H, variables=H.variables, limits=budget.limits())
        cert["dimension"] = dim
        cert["free_coordinates"] = len(setup.free_vars)
        if dim == len(setup.free_vars):
            return TRUE, cert, []
        cert["reason"] = ("hypothesis variety has lower dimension than the "
                          "construction's degrees of freedom")
        conditions = _try_conditions(setup, budget)
        return TRUE_ON_PARTS, cert, conditions

    # 3. exact rational countermodel (cheap, and decisive: when every
    # instance is exactly computable the construction has no branching
    # steps, so the hypothesis variety is irreducible and one generic
    # refutation certifies generic falsity)
    counter = _exact_countermodel(system, pred, setup)
    if counter is not None:
        return FALSE, counter, []

    # 4. generically false: nondegeneracy product vanishes on H + theses
    joint = Ideal(H.generators + setup.theses, variables=H.variables)
    nondeg_product = Polynomial.const(1)
    for f in setup.factors:
        nondeg_product = nondeg_product * f
    if not nondeg_product.is_constant():
        if radical_membership(nondeg_product, joint, limits=budget.limits()):
            return FALSE, {"route": "no_nondegenerate_model",
                           "saturated_by": [f.canonical_str()
                                            for f in setup.factors]}, []
    elif joint.is_unit(limits=budget.limits()):
        return FALSE, {"route": "no_model"}, []

    # 5. conditional truth
    conditions = _try_conditions(setup, budget)
    if conditions:
        return TRUE_ON_PARTS, {"route": "conditions"}, conditions

    return UNKNOWN, {"reason": "undecided",
                     "detail": "no certificate for truth or falsity"}, []


_REFUTED_BY_SIGN = "refuted_by_sign"


def _theses_hold(H: Ideal, setup: StatementSetup, budget: Budget) -> str | None:
    """Name of the route certifying the theses over `H`, or None.

    Returns the sentinel `_REFUTED_BY_SIGN` when the squared identity holds
    but the claimed ratio has the wrong sign (a refutation, not a proof)."""
    if all(radical_membership(t, H, limits=budget.limits())
           for t in setup.theses):
        return "radical_membership"
    if setup.aux:
        ratio: Fraction = setup.aux["ratio"]
        e1, e2 = setup.aux["exprs"]
        if _sign_definite(e1, setup) and _sign_definite(e2, setup):
            square = setup.theses[0] * setup.aux["opposite"]
            if radical_membership(square, H, limits=budget.limits()):
                if ratio > 0:
                    return "squared_identity_with_sign_convention"
                if ratio < 0:
                    return _REFUTED_BY_SIGN
    return None


def _try_conditions(setup: StatementSetup, budget: Budget) -> list:
    def verify(extended: Ideal) -> bool:
        route = _theses_hold(extended, setup, budget)
        return route is not None and route != _REFUTED_BY_SIGN

    try:
        return discover_conditions(setup, budget, verify)
    except ResourceLimitError:
        return []


def _sign_definite(expr: MeasureExpr, setup: StatementSetup) -> bool:
    """True when the expression is a nonnegative combination of quantities
    that are nonnegative by convention."""
    mm = setup.measures
    if mm is None:
        return False
    for coeff, atom in expr.terms:
        if coeff <= 0 or _atom_sign(atom, mm.alignment) != 1:
            return False
        _, var = mm._atom_terms[_atom_key(atom, mm.alignment)]
        var = (setup.renames or {}).get(var, var)
        mv = mm.variables.get(var)
        if mv is None or not mv.nonneg:
            return False
    return True


def _exact_countermodel(system: ProofSystem, pred, setup: StatementSetup):
    """A rational instance satisfying hypotheses and nondegeneracy exactly
    on which some thesis is exactly nonzero. Independent of the saturated
    ideal: uses the raw (unplaced) model, so it refutes the statement even
    if the algebraic route above was inconclusive."""
    if setup.measures is not None or pred.kind == "measure_ratio":
        return None  # measured quantities involve square roots
    construction = system.construction
    raw = algebraize(construction, wlog=False)
    theses = translate_predicate(pred, raw)
    for seed in range(COUNTERMODEL_SEEDS):
        try:
            inst = sample_instance(construction, seed=seed)
        except UnsatisfiableInstance:
            continue
        assignment = raw.assignment_for(inst)
        if not _all_exact(assignment.values()):
            continue
        if any(h.evaluate(assignment) != 0 for h in raw.hypotheses):
            continue
        if any(g.evaluate(assignment) == 0 for g in raw.nondegeneracy):
            continue
        values = [t.evaluate(assignment) for t in theses]
        if any(v != 0 for v in values):
            witness = {pid: [str(c) for c in inst.point(pid)]
                       for pid in construction.point_ids()}
            return {"route": "rational_countermodel", "seed": seed,
                    "instance": witness,
                    "thesis_values": [str(v) for v in values]}
    return None


def _all_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)
