"""Buchberger engine: bases, normal forms, and the defining invariants."""
import random
from fractions import Fraction

from mechgeo.poly import (Ideal, Polynomial, default_order, grevlex,
                          groebner_basis, lex, normal_form, parse_polynomial,
                          reduce, s_polynomial)

from oracles import eval_at, rand_fraction, rand_poly

P = parse_polynomial


# ---------------------------------------------------------------------------
# pinned single-step examples
# ---------------------------------------------------------------------------

def test_reduce_single_variable():
    assert reduce(P("x^2"), [P("x")]).is_zero()
    assert reduce(P("x^2 + y"), [P("x")]) == P("y")


def test_reduce_two_divisors_lex():
    r = reduce(P("x^2*y - x"), [P("x*y - 1"), P("y^2 - 1")],
               order=lex(["x", "y"]))
    assert r.is_zero()


def test_groebner_circle_meets_diagonal():
    gb = groebner_basis([P("x^2 + y^2 - 1"), P("x - y")],
                        order=lex(["x", "y"]))
    assert [g.canonical_str() for g in gb] == ["x - y", "y^2 - 1/2"]


def test_groebner_of_unit_ideal_is_one():
    gb = groebner_basis([P("x"), P("x - 1")])
    assert len(gb) == 1 and gb[0] == Polynomial.const(1)


def test_groebner_of_empty_input_is_empty():
    assert groebner_basis([]) == ()
    assert groebner_basis([Polynomial.zero()]) == ()


# ---------------------------------------------------------------------------
# defining properties, randomized
# ---------------------------------------------------------------------------

def _random_ideals(seed, count, nvars=3, ngens=3):
    rng = random.Random(seed)
    vs = ["x", "y", "z", "w"][:nvars]
    out = []
    for _ in range(count):
        gens = [rand_poly(rng, vs, max_terms=3, max_deg=3, span=5)
                for _ in range(ngens)]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            out.append((vs, gens))
    return out


def test_every_s_polynomial_reduces_to_zero():
    for vs, gens in _random_ideals(201, 25):
        order = grevlex(vs)
        gb = groebner_basis(gens, order=order)
        if len(gb) == 1 and gb[0].is_constant():
            continue
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                s = s_polynomial(gb[i], gb[j], order)
                assert reduce(s, gb, order=order).is_zero()


def test_generators_reduce_to_zero_against_their_basis():
    for vs, gens in _random_ideals(202, 25):
        order = grevlex(vs)
        gb = groebner_basis(gens, order=order)
        for g in gens:
            assert reduce(g, gb, order=order).is_zero()


def test_basis_is_reduced_and_idempotent():
    for vs, gens in _random_ideals(203, 20):
        order = grevlex(vs)
        gb = groebner_basis(gens, order=order)
        again = groebner_basis(gb, order=order)
        assert list(again) == list(gb)
        # every element monic, no term reducible by another element's lead
        for i, g in enumerate(gb):
            _, lc = g.leading(order)
            assert lc == 1
            others = [h for j, h in enumerate(gb) if j != i]
            for mono in g.terms:
                for h in others:
                    lm, _ = h.leading(order)
                    assert not lm.divides(mono)


def test_basis_independent_of_generator_order_and_scaling():
    rng = random.Random(204)
    for vs, gens in _random_ideals(205, 15):
        order = grevlex(vs)
        gb = groebner_basis(gens, order=order)
        shuffled = list(gens)
        rng.shuffle(shuffled)
        scaled = [Polynomial.const(Fraction(rng.randint(1, 7),
                                            rng.randint(1, 7))) * g
                  for g in shuffled]
        assert list(groebner_basis(scaled, order=order)) == list(gb)


def test_normal_form_is_canonical_modulo_ideal():
    # two polynomials differing by an ideal element share one normal form
    for vs, gens in _random_ideals(206, 15):
        rng = random.Random(sum(len(g.terms) for g in gens))
        order = grevlex(vs)
        gb = groebner_basis(gens, order=order)
        if len(gb) == 1 and gb[0].is_constant():
            continue
        f = rand_poly(rng, vs, max_terms=4, max_deg=3)
        noise = Polynomial.zero()
        for g in gens:
            noise = noise + rand_poly(rng, vs, max_terms=2, max_deg=2) * g
        assert normal_form(f, gb, order) == normal_form(f + noise, gb, order)


def test_normal_form_has_no_reducible_terms():
    for vs, gens in _random_ideals(207, 15):
        rng = random.Random(len(gens))
        order = grevlex(vs)
        gb = groebner_basis(gens, order=order)
        f = rand_poly(rng, vs, max_terms=5, max_deg=4)
        r = normal_form(f, gb, order)
        for mono in r.terms:
            for g in gb:
                lm, _ = g.leading(order)
                assert not lm.divides(mono)


def test_difference_from_normal_form_lies_in_ideal():
    for vs, gens in _random_ideals(208, 12):
        rng = random.Random(len(vs) + len(gens))
        order = grevlex(vs)
        gb = groebner_basis(gens, order=order)
        f = rand_poly(rng, vs, max_terms=4, max_deg=3)
        r = normal_form(f, gb, order)
        assert normal_form(f - r, gb, order).is_zero()


def test_basis_vanishes_wherever_generators_vanish():
    # parametrized varieties give exact rational points to test against
    rng = random.Random(209)
    for _ in range(15):
        px = rand_poly(rng, ["t"], max_terms=3, max_deg=3)
        py = rand_poly(rng, ["t"], max_terms=3, max_deg=3)
        gens = [P("x") - px, P("y") - py]
        gb = groebner_basis(gens, order=grevlex(["t", "x", "y"]))
        for _ in range(5):
            tau = rand_fraction(rng)
            point = {"t": tau,
                     "x": eval_at(px, {"t": tau}),
                     "y": eval_at(py, {"t": tau})}
            for g in gb:
                assert eval_at(g, point) == 0


def test_lex_basis_in_two_vars_triangularizes():
    # lex bases of zero-dimensional ideals contain a univariate polynomial
    gb = groebner_basis([P("x^2 + y^2 - 4"), P("x*y - 1")],
                        order=lex(["x", "y"]))
    only_y = [g for g in gb if set(g.variables()) <= {"y"}]
    assert only_y, "expected a univariate eliminant in the lex basis"


def test_ideal_caches_bases_per_order():
    ideal = Ideal([P("x^2 - y"), P("y^2 - x")])
    o = default_order(["x", "y"])
    first = ideal.groebner(o)
    second = ideal.groebner(o)
    assert first is second
