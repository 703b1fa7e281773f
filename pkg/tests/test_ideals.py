"""Ideal-level operations: membership, radicals, elimination, saturation,
dimension — each checked against an independent oracle where one exists."""
import random
from fractions import Fraction

from mechgeo.poly import (Ideal, Polynomial, default_order, dimension,
                          eliminate, grevlex, groebner_basis,
                          ideal_membership, lex, parse_polynomial,
                          radical_membership, reduce, saturate)

from oracles import (eval_at, fraction_matrix_rank, rand_fraction, rand_poly,
                     rand_univariate, sylvester_resultant)

P = parse_polynomial


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def test_membership_basic_cases():
    ideal = Ideal([P("x^2 - y^2"), P("x + y")])
    assert not ideal_membership(P("x - y"), ideal)
    assert ideal_membership(P("x^2 - y^2"), ideal)
    assert ideal_membership(P("x^2 + x*y"), ideal)  # x*(x+y)
    assert ideal_membership(Polynomial.zero(), ideal)


def test_membership_closed_under_combination():
    rng = random.Random(301)
    vs = ["x", "y", "z"]
    for _ in range(20):
        gens = [rand_poly(rng, vs, 3, 2) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        ideal = Ideal(gens)
        combo = Polynomial.zero()
        for g in gens:
            combo = combo + rand_poly(rng, vs, 2, 2) * g
        assert ideal_membership(combo, ideal)


def test_membership_invariant_under_presentation():
    rng = random.Random(302)
    gens = [P("x^2 - z"), P("x*y + z^2"), P("y - z")]
    ideal = Ideal(gens)
    f = P("y") * gens[0] + P("z^2 - 1") * gens[2]
    shuffled = list(gens)
    for _ in range(5):
        rng.shuffle(shuffled)
        scaled = [Polynomial.const(Fraction(rng.randint(1, 5))) * g
                  for g in shuffled]
        assert ideal_membership(f, Ideal(scaled))
    probe = P("x + 1")
    assert (ideal_membership(probe, ideal)
            == ideal_membership(probe, Ideal(list(reversed(gens)))))


# ---------------------------------------------------------------------------
# radical membership
# ---------------------------------------------------------------------------

def test_radical_membership_basic_cases():
    assert radical_membership(P("x"), Ideal([P("x^2")]))
    assert not radical_membership(P("x + 1"), Ideal([P("x^2")]))
    assert radical_membership(P("x*y"), Ideal([P("x^2"), P("y^3")]))
    assert radical_membership(Polynomial.zero(), Ideal([P("x")]))


def test_radical_membership_detects_powers():
    rng = random.Random(303)
    for _ in range(15):
        f = rand_poly(rng, ["x", "y"], 3, 2)
        if f.is_zero() or f.is_constant():
            continue
        k = rng.randint(2, 4)
        ideal = Ideal([f ** k])
        assert radical_membership(f, ideal)
        # something sharing no zero with f^k stays outside
        assert not radical_membership(f + Polynomial.const(1), ideal) or \
            radical_membership(Polynomial.const(1), ideal)


def test_radical_membership_implied_by_membership():
    rng = random.Random(304)
    vs = ["x", "y"]
    for _ in range(10):
        gens = [rand_poly(rng, vs, 3, 2) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        ideal = Ideal(gens)
        f = rand_poly(rng, vs, 2, 1) * gens[0]
        assert radical_membership(f, ideal)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def test_eliminate_pinned_examples():
    el = eliminate(Ideal([P("y - x^2"), P("z - x^3")]), {"x"})
    assert [g.canonical_str() for g in el.generators] == ["y^3 - z^2"]

    el = eliminate(Ideal([P("x - t"), P("y - t")]), {"t"})
    assert [g.canonical_str() for g in el.generators] == ["x - y"]

    el = eliminate(Ideal([P("x^2 + y^2 - 1")]), {"y"})
    assert el.generators == ()


def test_eliminate_output_is_free_of_dropped_variables():
    rng = random.Random(305)
    for _ in range(12):
        gens = [rand_poly(rng, ["t", "x", "y"], 3, 2) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        el = eliminate(Ideal(gens), {"t"})
        for g in el.generators:
            assert "t" not in g.variables()


def test_eliminate_contains_resultant():
    # Res_t(f, g) lies in <f, g> ∩ Q[x]; the basis returned by eliminate
    # must therefore reduce the independently computed resultant to zero.
    rng = random.Random(306)
    checked = 0
    for _ in range(40):
        f = rand_univariate(rng, "t", rng.randint(1, 3)) + \
            rand_poly(rng, ["x"], 2, 2)
        g = rand_univariate(rng, "t", rng.randint(1, 3)) + \
            rand_poly(rng, ["x"], 2, 2)
        res = sylvester_resultant(f, g, "t")
        if res.is_zero():
            continue
        ideal = Ideal([f, g])
        # resultant is an explicit combination of f and g
        assert ideal_membership(res, ideal)
        el = eliminate(ideal, {"t"})
        assert reduce(res, list(el.generators),
                      order=default_order(["x"])).is_zero()
        checked += 1
        if checked >= 20:
            break
    assert checked >= 20


def test_eliminate_vanishes_on_projected_points():
    # exact points of the variety project into zeros of the eliminant
    rng = random.Random(307)
    for _ in range(12):
        px = rand_poly(rng, ["t"], 3, 3)
        py = rand_poly(rng, ["t"], 3, 3)
        ideal = Ideal([P("x") - px, P("y") - py])
        el = eliminate(ideal, {"t"})
        for _ in range(6):
            tau = rand_fraction(rng)
            point = {"x": eval_at(px, {"t": tau}), "y": eval_at(py, {"t": tau})}
            for g in el.generators:
                assert eval_at(g, point) == 0


def test_eliminate_nothing_keeps_the_ideal():
    ideal = Ideal([P("x^2 - y")])
    el = eliminate(ideal, set())
    assert ideal_membership(P("x^2 - y"), el)


# ---------------------------------------------------------------------------
# saturation
# ---------------------------------------------------------------------------

def test_saturate_pinned_examples():
    s = saturate(Ideal([P("x*y")]), P("x"))
    assert [g.canonical_str() for g in s.generators] == ["y"]
    s = saturate(Ideal([P("x")]), P("y"))
    assert [g.canonical_str() for g in s.generators] == ["x"]
    s = saturate(Ideal([P("x^2")]), P("x"))
    assert s.is_unit()


def test_saturation_contains_original_ideal():
    rng = random.Random(308)
    vs = ["x", "y", "z"]
    for _ in range(12):
        gens = [rand_poly(rng, vs, 3, 2) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        f = rand_poly(rng, vs, 2, 2)
        if not gens or f.is_zero() or f.is_constant():
            continue
        ideal = Ideal(gens)
        sat = saturate(ideal, f)
        for g in gens:
            assert ideal_membership(g, sat)


def test_saturation_members_return_after_multiplying_back():
    # g in I : f^inf means f^k * g in I for some k — verify with small k
    rng = random.Random(309)
    vs = ["x", "y"]
    for _ in range(10):
        gens = [rand_poly(rng, vs, 3, 2) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        f = rand_poly(rng, vs, 2, 1)
        if not gens or f.is_zero() or f.is_constant():
            continue
        ideal = Ideal(gens)
        sat = saturate(ideal, f)
        for g in sat.generators:
            ok = False
            probe = g
            for _ in range(8):
                if ideal_membership(probe, ideal):
                    ok = True
                    break
                probe = probe * f
            assert ok, "saturation produced an element outside I : f^inf"


def test_saturation_removes_the_named_component():
    # <x*y, x*z> : x^inf = <y, z>
    sat = saturate(Ideal([P("x*y"), P("x*z")]), P("x"))
    assert ideal_membership(P("y"), sat)
    assert ideal_membership(P("z"), sat)
    assert not ideal_membership(P("x"), sat)


# ---------------------------------------------------------------------------
# dimension
# ---------------------------------------------------------------------------

def test_dimension_pinned_examples():
    assert dimension(Ideal([], variables=["x", "y", "z"])) == 3
    assert dimension(Ideal([P("x")], variables=["x", "y"])) == 1
    assert dimension(Ideal([P("x*y - 1")])) == 1
    assert dimension(Ideal([P("x"), P("x - 1")])) == -1


def test_dimension_of_linear_ideals_matches_rank():
    # for linear generators: dim = n - rank, rank via plain Gaussian elimination
    rng = random.Random(310)
    vs = ["x", "y", "z", "w"]
    for _ in range(25):
        rows = []
        gens = []
        for _ in range(rng.randint(1, 4)):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in vs]
            if all(c == 0 for c in coeffs):
                continue
            rows.append(coeffs)
            p = Polynomial.zero()
            for c, v in zip(coeffs, vs):
                p = p + Polynomial.const(c) * Polynomial.var(v)
            gens.append(p)
        if not gens:
            continue
        expected = len(vs) - fraction_matrix_rank(rows)
        assert dimension(Ideal(gens, variables=vs)) == expected


def test_dimension_of_hypersurface():
    rng = random.Random(311)
    vs = ["x", "y", "z"]
    for _ in range(10):
        f = rand_poly(rng, vs, 4, 3)
        if f.is_zero() or f.is_constant():
            continue
        assert dimension(Ideal([f], variables=vs)) == 2


def test_dimension_of_parametrized_curve_is_one():
    rng = random.Random(312)
    for _ in range(8):
        px = rand_poly(rng, ["t"], 3, 3)
        py = rand_poly(rng, ["t"], 3, 3)
        pz = rand_poly(rng, ["t"], 3, 3)
        ideal = Ideal([P("x") - px, P("y") - py, P("z") - pz],
                      variables=["t", "x", "y", "z"])
        assert dimension(ideal) == 1


def test_dimension_stable_across_generator_presentation():
    rng = random.Random(313)
    vs = ["x", "y", "z"]
    count = 0
    while count < 20:
        gens = [rand_poly(rng, vs, 3, 2) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero() and not g.is_constant()]
        if not gens:
            continue
        d1 = dimension(Ideal(gens, variables=vs))
        shuffled = list(gens)
        rng.shuffle(shuffled)
        scaled = [Polynomial.const(Fraction(rng.randint(1, 4),
                                            rng.randint(1, 4))) * g
                  for g in shuffled]
        d2 = dimension(Ideal(scaled, variables=vs))
        assert d1 == d2
        count += 1


def test_zero_dimensional_intersection():
    # two generic conics meet in finitely many points
    ideal = Ideal([P("x^2 + y^2 - 4"), P("x*y - 1")])
    assert dimension(ideal) == 0
