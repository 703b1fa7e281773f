"""Buchberger's algorithm and multivariate division.

Internally polynomials are dicts mapping exponent tuples (aligned with the
order's variable list) to integers; reductions are fraction-free with content
stripped after every cancellation, so all coefficient work is big-integer.
Pair selection is the normal strategy (smallest lcm first) and both classic
Buchberger criteria (coprime leading terms, chain criterion) prune the queue.
The returned basis is reduced: monic, minimal, inter-reduced, sorted by
leading monomial descending.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

from ..limits import ResourceLimits, _Meter
from .orders import MonomialOrder, default_order
from .polynomial import Monomial, Polynomial

IntPoly = dict  # exponent tuple -> int coefficient


def _effective_order(polys, order: MonomialOrder | None) -> MonomialOrder:
    vs = set()
    for p in polys:
        vs.update(p.variables())
    if order is None:
        return default_order(vs)
    return order.extended(vs)


def _to_int_poly(p: Polynomial, order: MonomialOrder) -> IntPoly:
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    d = {}
    for m, c in p.terms.items():
        d[order.exponent_vector(m)] = c.numerator * (den // c.denominator)
    return _strip_content(d)


def _from_int_poly(d: IntPoly, order: MonomialOrder) -> Polynomial:
    vs = order.vars
    terms = {}
    for e, c in d.items():
        mono = Monomial([(vs[i], x) for i, x in enumerate(e) if x])
        terms[mono] = Fraction(c)
    return Polynomial(terms, order)


def _strip_content(d: IntPoly) -> IntPoly:
    if not d:
        return d
    g = 0
    for c in d.values():
        g = gcd(g, c)
        if g == 1:
            return d
    if g > 1:
        for e in d:
            d[e] //= g
    return d


def _e_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _e_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _e_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _e_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _e_coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _lead(d: IntPoly, keyf) -> tuple:
    return max(d, key=keyf)


def _cancel(f: IntPoly, t: tuple, g: IntPoly, glead: tuple):
    """f := lc(g)*f - f[t]*x^(t-glead)*g, then strip content. In place."""
    c = f[t]
    lg = g[glead]
    shift = _e_sub(t, glead)
    if lg != 1:
        for e in f:
            f[e] *= lg
    shifted = any(shift)
    for e, ce in g.items():
        k = _e_mul(e, shift) if shifted else e
        s = f.get(k, 0) - c * ce
        if s:
            f[k] = s
        else:
            f.pop(k, None)
    _strip_content(f)


def _reduce_lead(f: IntPoly, basis: list, leads: list, keyf, meter: _Meter) -> IntPoly:
    """Cancel leading terms until the lead is irreducible or f = 0."""
    while f:
        t = _lead(f, keyf)
        hit = False
        for i, gl in enumerate(leads):
            if _e_divides(gl, t):
                _cancel(f, t, basis[i], gl)
                hit = True
                break
        if not hit:
            return f
        meter.check_wall()
    return f


def _reduce_full_tracked(f: IntPoly, basis: list, leads: list, keyf, meter: _Meter):
    """Full normal form, fraction-free: returns (r, mult) with r = mult * nf(f),
    r integer, mult a nonzero Fraction. Deterministic: always the largest
    reducible term, first matching basis element in list order."""
    f = dict(f)
    mult = Fraction(1)
    while True:
        meter.check_wall()
        target = None
        red = None
        for t in sorted(f, key=keyf, reverse=True):
            for i, gl in enumerate(leads):
                if _e_divides(gl, t):
                    target, red = t, i
                    break
            if target is not None:
                break
        if target is None:
            return f, mult
        g = basis[red]
        gl = leads[red]
        c = f[target]
        lg = g[gl]
        shift = _e_sub(target, gl)
        if lg != 1:
            for e in f:
                f[e] *= lg
            mult *= lg
        shifted = any(shift)
        for e, ce in g.items():
            k = _e_mul(e, shift) if shifted else e
            s = f.get(k, 0) - c * ce
            if s:
                f[k] = s
            else:
                f.pop(k, None)
        if f:
            d = 0
            for ce in f.values():
                d = gcd(d, ce)
                if d == 1:
                    break
            if d > 1:
                for e in f:
                    f[e] //= d
                mult /= d


def _spoly(fi: IntPoly, li: tuple, fj: IntPoly, lj: tuple) -> IntPoly:
    L = _e_lcm(li, lj)
    ci, cj = fi[li], fj[lj]
    g = gcd(ci, cj)
    mi, mj = cj // g, ci // g
    si, sj = _e_sub(L, li), _e_sub(L, lj)
    out: IntPoly = {}
    for e, c in fi.items():
        out[_e_mul(e, si)] = mi * c
    for e, c in fj.items():
        k = _e_mul(e, sj)
        s = out.get(k, 0) - mj * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return _strip_content(out)


def _arena_bytes(basis: list, nvars: int) -> int:
    total = 0
    for d in basis:
        total += 64
        for e, c in d.items():
            total += 16 * nvars + 48 + (c.bit_length() >> 3)
    return total


def buchberger(polys: list[Polynomial], order: MonomialOrder | None = None,
               limits: ResourceLimits | None = None) -> tuple[Polynomial, ...]:
    """Reduced Gröbner basis of the ideal generated by polys."""
    order = _effective_order(polys, order)
    meter = _Meter(limits)
    keyf = order.vector_key()
    nvars = len(order.vars)

    basis: list[IntPoly] = []
    for p in polys:
        if p.is_zero():
            continue
        d = _to_int_poly(p, order)
        if d:
            basis.append(d)
    if not basis:
        return ()

    leads = [_lead(d, keyf) for d in basis]
    unit_vec = (0,) * nvars

    pending: dict[tuple[int, int], tuple] = {}
    treated: set[tuple[int, int]] = set()
    heap: list = []

    def push_pair(i: int, j: int):
        if i > j:
            i, j = j, i
        L = _e_lcm(leads[i], leads[j])
        pending[(i, j)] = L
        heapq.heappush(heap, (keyf(L), i, j))

    n0 = len(basis)
    for i in range(n0):
        for j in range(i + 1, n0):
            push_pair(i, j)

    def progress():
        return {"basis_size": len(basis), "pairs": len(pending)}

    while heap:
        _, i, j = heapq.heappop(heap)
        key = (i, j)
        if key not in pending:
            continue
        L = pending.pop(key)
        treated.add(key)

        # Buchberger's first criterion
        if _e_coprime(leads[i], leads[j]):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if _e_divides(leads[k], L):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a in treated and b in treated:
                    skip = True
                    break
        if skip:
            continue

        meter.tick_reduction(progress())
        s = _spoly(basis[i], leads[i], basis[j], leads[j])
        r = _reduce_lead(s, basis, leads, keyf, meter)
        if not r:
            continue
        if meter.reductions % 128 == 0:
            meter.check_arena(_arena_bytes(basis, nvars), progress())
        rl = _lead(r, keyf)
        if r[rl] < 0:
            r = {e: -c for e, c in r.items()}
        new_index = len(basis)
        basis.append(r)
        leads.append(rl)
        if rl == unit_vec:
            break  # unit ideal
        for k in range(new_index):
            push_pair(k, new_index)

    return _reduce_basis(basis, leads, order, keyf, meter)


def _reduce_basis(basis, leads, order, keyf, meter) -> tuple[Polynomial, ...]:
    idx = sorted(range(len(basis)), key=lambda i: keyf(leads[i]))
    kept: list[int] = []
    for i in idx:
        if not any(_e_divides(leads[k], leads[i]) for k in kept):
            kept.append(i)
    mins = [dict(basis[i]) for i in kept]
    mleads = [leads[i] for i in kept]

    # leads are pairwise indivisible, so tail reduction keeps each lead
    for i in range(len(mins)):
        others = [mins[k] for k in range(len(mins)) if k != i]
        oleads = [mleads[k] for k in range(len(mins)) if k != i]
        if not others:
            continue
        r, _ = _reduce_full_tracked(mins[i], others, oleads, keyf, meter)
        mins[i] = _strip_content(r)

    out = [_from_int_poly(d, order).monic(order) for d in mins]
    out.sort(key=lambda p: keyf(order.exponent_vector(p.leading(order)[0])), reverse=True)
    return tuple(out)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    """Textbook S-polynomial over Q (used by basis-soundness checks)."""
    order = _effective_order([f, g], order)
    lmf, lcf = f.leading(order)
    lmg, lcg = g.leading(order)
    L = lmf.lcm(lmg)
    mf = Polynomial({L.div(lmf): 1 / lcf})
    mg = Polynomial({L.div(lmg): 1 / lcg})
    return (mf * f - mg * g).with_order(order)


def normal_form(f: Polynomial, basis: list[Polynomial], order: MonomialOrder | None = None,
                limits: ResourceLimits | None = None) -> Polynomial:
    """Deterministic full normal form of f against basis (list order wins)."""
    gens = [g for g in basis if not g.is_zero()]
    order = _effective_order([f] + gens, order)
    if f.is_zero() or not gens:
        return f.with_order(order)
    meter = _Meter(limits)
    keyf = order.vector_key()
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    fd = {order.exponent_vector(m): c.numerator * (den // c.denominator)
          for m, c in f.terms.items()}
    gds = [_to_int_poly(g, order) for g in gens]
    gleads = [_lead(g, keyf) for g in gds]
    r, mult = _reduce_full_tracked(fd, gds, gleads, keyf, meter)
    scale = Fraction(1, den) / mult
    vs = order.vars
    terms = {}
    for e, c in r.items():
        terms[Monomial([(vs[i], x) for i, x in enumerate(e) if x])] = c * scale
    return Polynomial(terms, order)
