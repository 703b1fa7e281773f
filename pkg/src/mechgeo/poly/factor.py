"""Squarefree and rational factorization of small multivariate polynomials.

Only needs to split the low-degree locus/relation polynomials the reasoner
produces. Content and sign normalization are handled here; the exact rational
splitting of squarefree parts is delegated to sympy's factor engine, so the
completeness flag in the result never trips in practice but remains part of
the API for callers that must handle partial factorizations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .polynomial import Monomial, Polynomial


@dataclass(frozen=True)
class Factorization:
    content: Fraction
    factors: tuple[tuple[Polynomial, int], ...]
    complete: bool

    def expand(self) -> Polynomial:
        out = Polynomial.const(self.content)
        for f, m in self.factors:
            out = out * f ** m
        return out


def _to_sympy(p: Polynomial, syms: dict):
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for v, e in m.exps:
            t = t * syms[v] ** e
        expr = expr + t
    return expr


def _from_sympy(expr, names: dict) -> Polynomial:
    poly = sympy.Poly(expr, *names.values()) if names else None
    if poly is None:
        q = sympy.Rational(expr)
        return Polynomial.const(Fraction(int(q.p), int(q.q)))
    inv = {s: v for v, s in names.items()}
    gens = poly.gens
    terms = {}
    for exps, coeff in poly.terms():
        q = sympy.Rational(coeff)
        mono = Monomial([(inv[gens[i]], e) for i, e in enumerate(exps) if e])
        terms[mono] = Fraction(int(q.p), int(q.q))
    return Polynomial(terms)


def factor_squarefree(f: Polynomial) -> Factorization:
    """Factor f over Q into irreducible factors with multiplicities.

    Returns content * prod(factor^mult) = f exactly; each factor is
    integer-primitive with positive canonical leading coefficient.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.is_constant():
        return Factorization(f.constant_value(), (), True)
    content, prim = f.content_primitive()
    names = {v: sympy.Symbol(v) for v in prim.variables()}
    expr = _to_sympy(prim, names)
    const, pairs = sympy.factor_list(expr)
    qconst = sympy.Rational(const)
    total = content * Fraction(int(qconst.p), int(qconst.q))
    out = []
    for fac, mult in pairs:
        p = _from_sympy(fac, {v: s for v, s in names.items() if s in fac.free_symbols})
        c, prim_f = p.content_primitive()
        total *= c ** mult
        out.append((prim_f, int(mult)))
    out.sort(key=lambda fm: (fm[0].total_degree(), fm[0].canonical_str()))
    return Factorization(total, tuple(out), True)


def squarefree_part(f: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of f."""
    fac = factor_squarefree(f)
    out = Polynomial.const(1)
    for p, _ in fac.factors:
        out = out * p
    return out
