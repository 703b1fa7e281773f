"""Monomial orders: degrevlex, lex, and block elimination orders.

An order is a variable priority list plus a kind. Orders expose ascending
sort keys; larger key = larger monomial. All three kinds are total and
multiplicative; block orders dominate on the elimination variables, which is
what makes basis elements free of them generate the elimination ideal.
"""
from __future__ import annotations

from typing import Callable, Sequence


class MonomialOrder:
    __slots__ = ("kind", "vars", "nelim", "tail_kind", "_index")

    def __init__(self, kind: str, variables: Sequence[str], nelim: int = 0, tail_kind: str = "grevlex"):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError("unknown order kind %r" % kind)
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate variables in order")
        self.kind = kind
        self.vars = vs
        self.nelim = nelim
        self.tail_kind = tail_kind
        self._index = {v: i for i, v in enumerate(vs)}

    def signature(self) -> tuple:
        return (self.kind, self.vars, self.nelim, self.tail_kind)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        if self.kind == "block":
            return "block(%r | %s %r)" % (self.vars[: self.nelim], self.tail_kind, self.vars[self.nelim:])
        return "%s%r" % (self.kind, self.vars)

    def extended(self, extra_vars) -> "MonomialOrder":
        """Same order with unknown variables appended at lowest priority."""
        missing = sorted(set(extra_vars) - set(self.vars))
        if not missing:
            return self
        return MonomialOrder(self.kind, self.vars + tuple(missing), self.nelim, self.tail_kind)

    def vector_key(self) -> Callable[[tuple], tuple]:
        """Ascending key on exponent vectors aligned with self.vars."""
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return _grevlex_vec
        k = self.nelim
        if self.tail_kind == "lex":
            return lambda e: (_grevlex_vec(e[:k]), e[k:])
        return lambda e: (_grevlex_vec(e[:k]), _grevlex_vec(e[k:]))

    def exponent_vector(self, mono) -> tuple:
        e = [0] * len(self.vars)
        idx = self._index
        for v, p in mono.exps:
            try:
                e[idx[v]] = p
            except KeyError:
                raise ValueError("monomial variable %r not covered by order %r" % (v, self))
        return tuple(e)

    def key(self, mono) -> tuple:
        return self.vector_key()(self.exponent_vector(mono))


def _grevlex_vec(e: tuple) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def grevlex(variables) -> MonomialOrder:
    return MonomialOrder("grevlex", tuple(variables))


def lex(variables) -> MonomialOrder:
    return MonomialOrder("lex", tuple(variables))


def block_order(elim_vars, tail: MonomialOrder) -> MonomialOrder:
    ev = tuple(elim_vars)
    overlap = set(ev) & set(tail.vars)
    if overlap:
        raise ValueError("elimination variables overlap tail order: %r" % sorted(overlap))
    return MonomialOrder("block", ev + tail.vars, nelim=len(ev), tail_kind=tail.kind)


def default_order(variables) -> MonomialOrder:
    return grevlex(sorted(variables))
