"""Factorisation over Q: every answer must multiply back to the input."""
import random
from fractions import Fraction

import pytest
from mechgeo.poly import (Polynomial, factor_squarefree, parse_polynomial,
                          squarefree_part)

from oracles import rand_poly

P = parse_polynomial


def _expand(fact):
    # independent re-expansion through ordinary ring arithmetic
    acc = Polynomial.const(fact.content)
    for p, mult in fact.factors:
        for _ in range(mult):
            acc = acc * p
    return acc


def test_factor_pinned_examples():
    f = factor_squarefree(P("x^2"))
    assert [(p.canonical_str(), m) for p, m in f.factors] == [("x", 2)]

    f = factor_squarefree(P("x^2 - y^2"))
    got = sorted(p.canonical_str() for p, _ in f.factors)
    assert got == ["x + y", "x - y"]
    assert all(m == 1 for _, m in f.factors)


def test_factor_recovers_constructed_product():
    a = P("x^2 + y^2 - x")
    b = P("x^2 - y^2 - x")
    f = factor_squarefree(a * b)
    texts = sorted(p.canonical_str() for p, _ in f.factors)
    assert texts == sorted([a.canonical_str(), b.canonical_str()])


def test_factorization_multiplies_back_to_input():
    rng = random.Random(401)
    cases = 0
    while cases < 30:
        parts = [rand_poly(rng, ["x", "y"], 3, 2) for _ in range(rng.randint(1, 3))]
        parts = [p for p in parts if not p.is_zero()]
        if not parts:
            continue
        product = Polynomial.const(1)
        for p in parts:
            product = product * p
        if product.is_zero():
            continue
        fact = factor_squarefree(product)
        assert _expand(fact) == product
        cases += 1


def test_factors_are_primitive_and_normalized():
    fact = factor_squarefree(P("4*x^2 - 4*y^2"))
    assert fact.content == 4
    for p, _ in fact.factors:
        # integer coefficients with no common divisor
        denoms = {c.denominator for c in p.terms.values()}
        assert denoms == {1}
        nums = [abs(c.numerator) for c in p.terms.values()]
        g = 0
        for n in nums:
            g = _gcd(g, n)
        assert g == 1


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def test_constant_input_has_no_factors():
    fact = factor_squarefree(Polynomial.const(Fraction(7, 3)))
    assert fact.content == Fraction(7, 3)
    assert fact.factors == ()


def test_zero_rejected():
    with pytest.raises(ValueError):
        factor_squarefree(Polynomial.zero())


def test_multiplicity_counted():
    fact = factor_squarefree(P("(x - y)^3 * (x + y)"))
    by_text = {p.canonical_str(): m for p, m in fact.factors}
    assert by_text == {"x - y": 3, "x + y": 1}


def test_squarefree_part_drops_multiplicity():
    sf = squarefree_part(P("(x - 1)^4"))
    assert sf.canonical_str() == "x - 1"
    f2 = factor_squarefree(sf)
    assert all(m == 1 for _, m in f2.factors)


def test_irreducible_stays_whole():
    fact = factor_squarefree(P("x^2 + y^2 - 1"))
    assert len(fact.factors) == 1
    assert fact.factors[0][1] == 1
    assert fact.complete
