"""Ideal-level operations: membership, radical membership (Rabinowitsch),
elimination via block orders, saturation, and Krull dimension via maximal
independent variable sets modulo leading terms."""
from __future__ import annotations

from fractions import Fraction

from ..limits import ResourceLimits
from .groebner import buchberger, normal_form
from .orders import MonomialOrder, block_order, default_order, grevlex
from .polynomial import Polynomial


class Ideal:
    """An ideal of Q[vars] given by generators, with a per-order basis cache."""

    def __init__(self, generators, variables=None):
        gens = tuple(g for g in generators if not g.is_zero())
        self.generators = gens
        self._explicit_vars = tuple(sorted(variables)) if variables is not None else None
        self._cache: dict[tuple, tuple[Polynomial, ...]] = {}

    @property
    def variables(self) -> tuple[str, ...]:
        vs = set(self._explicit_vars or ())
        for g in self.generators:
            vs.update(g.variables())
        return tuple(sorted(vs))

    def groebner(self, order: MonomialOrder | None = None,
                 limits: ResourceLimits | None = None) -> tuple[Polynomial, ...]:
        order = (order or default_order(self.variables)).extended(self.variables)
        sig = order.signature()
        if sig not in self._cache:
            self._cache[sig] = buchberger(list(self.generators), order, limits)
        return self._cache[sig]

    def is_unit(self, limits: ResourceLimits | None = None) -> bool:
        gb = self.groebner(limits=limits)
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def is_zero(self) -> bool:
        return not self.generators

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(g.canonical_str() for g in self.generators)


def reduce(f: Polynomial, basis, order: MonomialOrder | None = None,
           limits: ResourceLimits | None = None) -> Polynomial:
    """Normal form of f against a list of polynomials (not necessarily a GB)."""
    return normal_form(f, list(basis), order, limits)


def groebner_basis(ideal_or_polys, order: MonomialOrder | None = None,
                   limits: ResourceLimits | None = None) -> tuple[Polynomial, ...]:
    if isinstance(ideal_or_polys, Ideal):
        return ideal_or_polys.groebner(order, limits)
    return buchberger(list(ideal_or_polys), order, limits)


def ideal_membership(f: Polynomial, ideal: Ideal, order: MonomialOrder | None = None,
                     limits: ResourceLimits | None = None) -> bool:
    gb = ideal.groebner(order, limits)
    if not gb:
        return f.is_zero()
    return normal_form(f, list(gb), gb[0].order, limits).is_zero()


def fresh_variable(taken, stem: str = "zz") -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    i = 1
    while "%s%d" % (stem, i) in taken:
        i += 1
    return "%s%d" % (stem, i)


def radical_membership(f: Polynomial, ideal: Ideal,
                       limits: ResourceLimits | None = None) -> bool:
    """f in sqrt(I) iff 1 in I + <1 - z f> for fresh z (Rabinowitsch)."""
    if f.is_zero():
        return True
    vs = set(ideal.variables) | set(f.variables())
    z = fresh_variable(vs)
    trick = Polynomial.const(1) - Polynomial.var(z) * f
    gens = list(ideal.generators) + [trick]
    gb = buchberger(gens, grevlex(sorted(vs) + [z]), limits)
    return len(gb) == 1 and gb[0].is_constant()


def eliminate(ideal: Ideal, drop, tail_kind: str = "grevlex",
              limits: ResourceLimits | None = None) -> "Ideal":
    """The elimination ideal I ∩ Q[vars - drop] via a block order, drop first."""
    drop = set(drop)
    all_vars = set(ideal.variables)
    drop = drop & all_vars  # dropping a variable that never occurs is a no-op
    keep = sorted(all_vars - drop)
    if not drop:
        return Ideal(ideal.generators, variables=keep)
    tail = MonomialOrder(tail_kind, keep)
    order = block_order(sorted(drop), tail)
    gb = buchberger(list(ideal.generators), order, limits)
    kept = [g for g in gb if not (set(g.variables()) & drop)]
    out_order = default_order(keep)
    return Ideal(tuple(g.with_order(out_order) for g in kept), variables=keep)


def saturate(ideal: Ideal, f: Polynomial,
             limits: ResourceLimits | None = None) -> Ideal:
    """I : f^inf, computed as eliminate(I + <1 - z f>, {z})."""
    if f.is_zero():
        return Ideal([Polynomial.const(1)])
    if f.is_constant():
        return Ideal(ideal.generators, variables=ideal.variables)
    vs = set(ideal.variables) | set(f.variables())
    z = fresh_variable(vs)
    trick = Polynomial.const(1) - Polynomial.var(z) * f
    extended = Ideal(list(ideal.generators) + [trick], variables=vs | {z})
    shrunk = eliminate(extended, {z}, limits=limits)
    return Ideal(shrunk.generators, variables=vs)


def dimension(ideal: Ideal, variables=None,
              order: MonomialOrder | None = None,
              limits: ResourceLimits | None = None) -> int:
    """Krull dimension of Q[vars]/I: size of a maximum variable subset S such
    that no reduced-basis leading monomial has support inside S. -1 for <1>."""
    ambient = tuple(sorted(variables)) if variables is not None else ideal.variables
    if ideal.is_zero():
        return len(ambient)
    gb = ideal.groebner(order or default_order(set(ambient) | set(ideal.variables)), limits)
    if len(gb) == 1 and gb[0].is_constant():
        return -1
    ord_eff = gb[0].order
    supports = []
    for g in gb:
        lm, _ = g.leading(ord_eff)
        supports.append(frozenset(lm.variables()))
    # minimal supports suffice
    supports = sorted(set(supports), key=len)
    minimal = []
    for s in supports:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    n = len(set(ambient) | set(ideal.variables))

    def min_hitting(remaining, size, best_size):
        if not remaining:
            return size
        pivot = min(remaining, key=len)
        best_local = best_size
        for v in sorted(pivot):
            if size + 1 >= best_local:
                break
            rest = [s for s in remaining if v not in s]
            got = min_hitting(rest, size + 1, best_local)
            if got < best_local:
                best_local = got
        return best_local

    h = min_hitting(minimal, 0, len(minimal) + 1)
    return n - h
