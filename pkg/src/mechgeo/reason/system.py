"""Shared algebraic state for all reasoning operations on one construction.

The expensive object is the saturated hypothesis ideal. It is built in two
stages so the work is reused across statements:

1. coordinate stage — hypotheses about coordinates only, linearly presolved,
   then saturated by the construction's nondegeneracy factors;
2. measure stage (per statement/expression set) — measure-variable defining
   equations joined in, provably-equal nonnegative measures identified,
   factors whose square is a measure variable saturated through the variable
   itself (ref^2 - |d|^2 in the ideal makes I : |d|^2^inf == I : ref^inf),
   coordinate factors first because they shrink the system fastest.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..algebra import (AlgebraicModel, algebraize, attach_measures,
                       linear_presolve, nondegeneracy_factors,
                       prepare_statement, saturate_by_factors)
from ..algebra.measures import MeasureModel
from ..construction.model import Construction, MeasureExpr, Predicate
from ..poly import Ideal, Polynomial, ideal_membership
from .budget import Budget
from .results import ContradictoryConstruction


@dataclass
class StatementSetup:
    """Everything needed to judge one statement against a construction."""
    ideal: Ideal                      # saturated hypothesis ideal H'
    theses: tuple[Polynomial, ...]
    factors: tuple[Polynomial, ...]   # what H' was saturated by
    free_vars: tuple[str, ...]
    measures: Optional[MeasureModel] = None
    renames: dict = None
    subst: dict = None
    aux: dict = None                  # extra substituted polynomials by role


class ProofSystem:
    """Per-construction cache of compiled and saturated algebra."""

    def __init__(self, construction: Construction, wlog: bool = True):
        self.construction = construction
        self.model: AlgebraicModel = algebraize(construction, wlog=wlog)
        self._coord = None          # (gens, subst)
        self._coord_factors = None
        self._coord_saturated = None
        self._statement_cache: dict[str, StatementSetup] = {}

    # -- coordinate stage ----------------------------------------------------

    def coordinate_system(self) -> tuple[list[Polynomial], dict]:
        if self._coord is None:
            gens, subst = linear_presolve(self.model.hypotheses,
                                          keep=self.model.free_vars)
            self._coord = (gens, subst)
        return self._coord

    def coordinate_factors(self) -> list[Polynomial]:
        if self._coord_factors is None:
            _, subst = self.coordinate_system()
            polys = [p.subs(subst) for p in self.model.nondegeneracy]
            self._coord_factors = nondegeneracy_factors(polys)
        return self._coord_factors

    def coordinate_saturated(self, budget: Budget) -> Ideal:
        if self._coord_saturated is None:
            if self.model.degenerate_steps:
                raise ContradictoryConstruction(
                    "step '%s' is degenerate in every instance"
                    % self.model.degenerate_steps[0])
            gens, _ = self.coordinate_system()
            ideal = saturate_by_factors(gens, self.coordinate_factors(),
                                        limits=budget.limits())
            if ideal.is_unit(limits=budget.limits()):
                raise ContradictoryConstruction(
                    "no nondegenerate instance satisfies the construction")
            self._coord_saturated = ideal
        return self._coord_saturated

    # -- measure stage ---------------------------------------------------------

    def measure_setup(self, named_exprs: Sequence[tuple[str, MeasureExpr]],
                      budget: Budget,
                      extra_theses: Sequence[Polynomial] = ()
                      ) -> StatementSetup:
        base = self.coordinate_saturated(budget)
        _, coord_subst = self.coordinate_system()
        mm = attach_measures(self.model, named_exprs)

        measure_eqs = [g.subs(coord_subst)
                       for g in mm.model.hypotheses[len(self.model.hypotheses):]]

        renames = self._equal_measure_renames(mm, budget)
        merge = {old: Polynomial.var(new) for old, new in renames.items()}
        if merge:
            measure_eqs = [g.subs(merge) for g in measure_eqs]

        seen, eqs = set(), []
        for g in measure_eqs:
            key = g.canonical_str()
            if not g.is_zero() and key not in seen:
                seen.add(key)
                eqs.append(g)

        keep = set(self.model.free_vars) | set(mm.sums)
        gens, subst = linear_presolve(list(base.generators) + eqs, keep)

        factors = self._measure_factors(mm, renames, coord_subst, subst)
        ideal = saturate_by_factors(gens, factors, limits=budget.limits())
        if ideal.is_unit(limits=budget.limits()):
            raise ContradictoryConstruction(
                "no nondegenerate instance satisfies the construction")
        theses = tuple(t.subs(merge).subs(coord_subst).subs(subst)
                       for t in extra_theses)
        ambient = set(self.model.free_vars)
        for g in ideal.generators:
            ambient.update(g.variables())
        ideal = Ideal(ideal.generators, variables=sorted(ambient))
        return StatementSetup(ideal=ideal, theses=theses,
                              factors=tuple(factors),
                              free_vars=self.model.free_vars,
                              measures=mm, renames=renames, subst=subst)

    def _equal_measure_renames(self, mm: MeasureModel,
                               budget: Budget) -> dict[str, str]:
        """Identify nonnegative measure variables whose squares agree on the
        nondegenerate hypothesis variety (both are >= 0, so they are equal)."""
        base = self.coordinate_saturated(budget)
        _, coord_subst = self.coordinate_system()
        squared = [(name, mv.square.subs(coord_subst))
                   for name, mv in mm.variables.items()
                   if mv.nonneg and mv.square is not None]
        renames: dict[str, str] = {}

        def root(name: str) -> str:
            while name in renames:
                name = renames[name]
            return name

        checks = 0
        for i in range(len(squared)):
            for j in range(i + 1, len(squared)):
                a, sq_a = squared[i]
                b, sq_b = squared[j]
                if root(a) == root(b) or checks >= 64:
                    continue
                checks += 1
                if ideal_membership(sq_a - sq_b, base,
                                    limits=budget.limits()):
                    renames[root(b)] = root(a)
        return {name: root(name) for name in list(renames)}

    def _measure_factors(self, mm: MeasureModel, renames: dict,
                         coord_subst: dict, subst: dict) -> list[Polynomial]:
        """Saturation factors for the measure stage.

        Coordinate factors are already saturated into the base ideal and are
        not repeated: they cannot free a measure variable, so they add no new
        component. Each reference length must be saturated away from zero —
        where it vanishes, its aligned lengths drop out of their defining
        equations and float free, adding a spurious full-dimensional
        component. Since ref^2 - |d|^2 is in the ideal, saturating by the
        variable is equivalent to saturating by the direction norm and much
        cheaper. Any other nondegeneracy introduced at this stage (e.g. the
        area factor in the circumradius equation, which likewise frees its
        variable where it vanishes) is saturated directly, before the
        reference variables because shrinking the coordinate part first is
        measurably faster."""
        ref_squares = set()
        var_factors, seen_vars = [], set()
        for name, mv in mm.variables.items():
            if mv.kind != "ref":
                continue
            key = mv.square.subs(coord_subst).primitive().canonical_str()
            ref_squares.add(key)
            v = renames.get(name, name)
            if v not in seen_vars:
                seen_vars.add(v)
                var_factors.append(Polynomial.var(v))

        extra_nondeg = [
            p.subs(coord_subst) for p in
            mm.model.nondegeneracy[len(self.model.nondegeneracy):]]
        extra_nondeg = [p for p in extra_nondeg
                        if p.primitive().canonical_str() not in ref_squares]
        poly_factors = [f.subs(subst)
                        for f in nondegeneracy_factors(extra_nondeg)]
        poly_factors = [f for f in poly_factors if not f.is_constant()]
        return poly_factors + var_factors

    # -- statements ------------------------------------------------------------

    def statement_setup(self, pred: Predicate, budget: Budget) -> StatementSetup:
        key = pred.text()
        if key in self._statement_cache:
            return self._statement_cache[key]
        if pred.kind == "measure_ratio":
            e1, e2, ratio = pred.args
            qw1 = Polynomial.const(ratio.denominator) * Polynomial.var("w1")
            pw2 = Polynomial.const(ratio.numerator) * Polynomial.var("w2")
            setup = self.measure_setup([("w1", e1), ("w2", e2)], budget,
                                       extra_theses=(qw1 - pw2, qw1 + pw2))
            setup.aux = {"opposite": setup.theses[1], "ratio": ratio,
                         "exprs": (e1, e2)}
            setup.theses = setup.theses[:1]
        else:
            prep = prepare_statement(self.model, pred)
            base = self.coordinate_saturated(budget)
            _, coord_subst = self.coordinate_system()
            ambient = set(self.model.free_vars)
            for g in base.generators:
                ambient.update(g.variables())
            setup = StatementSetup(
                ideal=Ideal(base.generators, variables=sorted(ambient)),
                theses=tuple(t.subs(coord_subst) for t in prep.theses),
                factors=tuple(self.coordinate_factors()),
                free_vars=self.model.free_vars,
                renames={}, subst=coord_subst)
        self._statement_cache[key] = setup
        return setup
