"""Find and certify the relation between two measured quantities.

`relate` eliminates everything except the two measure variables from the
saturated hypothesis ideal; the surviving plane curve's factors are screened
against numeric instances evaluated with the standard sign conventions
(nonnegative unaligned lengths, signed aligned lengths), and a linear factor
is certified back through the prover as an exact ratio.

`compare` falls back to a numeric study of the ratio when no equality
exists: extremise over many random instances, refine with a coordinate-wise
golden-section search, and try to recognise the extremal constant as an
algebraic number of degree at most two. Such bounds are conjectures and are
never marked certified.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Optional, Sequence

from ..algebra import nondegeneracy_factors
from ..construction.model import Construction, MeasureExpr, Predicate
from ..construction.numeric import eval_measure_expr
from ..construction.sampler import UnsatisfiableInstance, sample_instance
from ..limits import ResourceLimitError
from ..poly import Polynomial, eliminate
from .budget import Budget
from .prove import _REFUTED_BY_SIGN, _theses_hold
from .results import TRUE, TRUE_ON_PARTS, CompareResult, RelateResult
from .system import ProofSystem

FILTER_SEEDS = 5
FILTER_TOL = 1e-8
COMPARE_SAMPLES = 10_000
REFINE_ROUNDS = 64
# Recognition accepts a*k^2 + b*k + c only when the relative residual beats
# RECOGNITION_TOL with all coefficients within COEFF_BOUND.  The two knobs are
# a joint budget: quadratics with coefficients up to B have roots packed
# densely enough that a chance match at relative residual ~1/B^3 exists for
# almost any real, so the tolerance must sit far below that density while
# staying above the ~1e-13 residual a float64 pipeline leaves on a true
# match.  (1e-11, 120) keeps six orders of magnitude against chance matches.
RECOGNITION_TOL = 1e-11
COEFF_BOUND = 120
# extrema outside this window mean the ratio degenerates to 0 or infinity:
# the bound in that direction carries no geometric content
INFORMATIVE_LO = 1e-4
INFORMATIVE_HI = 1e4


class NoRelationError(ValueError):
    """The elimination ideal in the two measure variables is zero."""


def relate(construction: Construction, e1: MeasureExpr, e2: MeasureExpr,
           *, timeout_ms: int | None = None) -> RelateResult:
    started = time.monotonic()
    budget = Budget(timeout_ms)
    result = RelateResult(expr1=e1.text(), expr2=e2.text(), kind="unknown")

    system = ProofSystem(construction)
    setup = system.measure_setup([("w1", e1), ("w2", e2)], budget)
    drop = set(setup.ideal.variables) - {"w1", "w2"}
    projected = eliminate(setup.ideal, drop, limits=budget.limits())
    if not projected.generators:
        raise NoRelationError(
            "no relation: the two quantities are algebraically independent")

    survivors = _numeric_filter(construction, e1, e2, setup.measures.alignment,
                                nondegeneracy_factors(projected.generators))
    if not survivors:
        result.detail = {"reason": "no factor consistent with the sign "
                                   "conventions at the filter instances"}
        result.elapsed_ms = (time.monotonic() - started) * 1000.0
        return result

    f = survivors[0]
    ratio = _linear_ratio(f)
    if ratio is not None:
        certified, route = _certify_ratio(system, e1, e2, ratio, budget)
        result.kind = "ratio"
        result.ratio = ratio
        result.relation = f.canonical_str()
        result.certified = certified
        result.detail = {"route": route}
    else:
        result.kind = "relation"
        result.relation = f.canonical_str()
        result.certified = True
        result.detail = {"route": "elimination_factor",
                         "note": "factor of the certified elimination ideal "
                                 "selected by the sign-convention filter"}
    result.elapsed_ms = (time.monotonic() - started) * 1000.0
    return result


def _numeric_filter(construction, e1, e2, alignment,
                    factors: Sequence[Polynomial]) -> list[Polynomial]:
    """Factors vanishing at every filter instance under sign conventions,
    cheapest first."""
    points = []
    for seed in range(FILTER_SEEDS):
        try:
            inst = sample_instance(construction, seed=seed)
        except UnsatisfiableInstance:
            continue
        points.append({"w1": eval_measure_expr(e1, inst, alignment),
                       "w2": eval_measure_expr(e2, inst, alignment)})
    survivors = []
    for f in factors:
        ok = bool(points)
        for vals in points:
            residual, scale = _scaled_eval(f, vals)
            if residual > FILTER_TOL * max(1.0, scale):
                ok = False
                break
        if ok:
            survivors.append(f)
    survivors.sort(key=lambda f: (f.total_degree(), len(f.terms),
                                  f.canonical_str()))
    return survivors


def _scaled_eval(f: Polynomial, vals: dict) -> tuple[float, float]:
    total, scale = 0.0, 0.0
    for mono, coeff in f.terms.items():
        term = float(coeff)
        for var, exp in mono.exps:
            term *= vals[var] ** exp
        total += term
        scale += abs(term)
    return abs(total), scale


def _linear_ratio(f: Polynomial) -> Optional[Fraction]:
    """e1/e2 read off a homogeneous linear factor a*w1 + b*w2."""
    if f.total_degree() != 1:
        return None
    a = b = Fraction(0)
    for mono, coeff in f.terms.items():
        if mono.is_one():
            return None
        var = mono.variables()[0]
        if var == "w1":
            a = coeff
        else:
            b = coeff
    if a == 0 or b == 0:
        return None
    return -b / a


def _certify_ratio(system: ProofSystem, e1, e2, ratio: Fraction,
                   budget: Budget) -> tuple[bool, str]:
    """Re-prove w1/w2 == ratio through the standard decision routes."""
    pred = Predicate("measure_ratio", (e1, e2, ratio))
    try:
        setup = system.statement_setup(pred, budget)
        route = _theses_hold(setup.ideal, setup, budget)
    except ResourceLimitError:
        return False, "resource_limit"
    if route is not None and route != _REFUTED_BY_SIGN:
        return True, route
    return False, "uncertified"


# ---------------------------------------------------------------------------
# compare: numeric extremal study when no equality exists
# ---------------------------------------------------------------------------

def compare(construction: Construction, e1: MeasureExpr, e2: MeasureExpr,
            *, timeout_ms: int | None = None,
            samples: int = COMPARE_SAMPLES) -> CompareResult:
    started = time.monotonic()
    try:
        rel = relate(construction, e1, e2, timeout_ms=timeout_ms)
    except NoRelationError:
        rel = None
    if rel is not None and rel.kind == "ratio" and rel.certified:
        return CompareResult(
            expr1=e1.text(), expr2=e2.text(), kind="ratio",
            value=float(rel.ratio), exact=_rat_str(rel.ratio),
            recognized=True, certified=True,
            detail={"relation": rel.relation},
            elapsed_ms=(time.monotonic() - started) * 1000.0)

    alignment = _alignment(construction)
    free_ids = [s.id for s in construction.steps if s.kind == "free_point"]
    best_max = _Extremum(+1, free_ids)
    best_min = _Extremum(-1, free_ids)
    for seed in range(samples):
        ratio, inst = _sample_ratio(construction, e1, e2, alignment, seed)
        if ratio is None:
            continue
        best_max.offer(ratio, inst)
        best_min.offer(ratio, inst)
    if best_max.value is None:
        return CompareResult(expr1=e1.text(), expr2=e2.text(), kind="extremal",
                             detail={"reason": "no valid instances"},
                             elapsed_ms=(time.monotonic() - started) * 1000.0)
    for ext in (best_max, best_min):
        ext.refine(construction, e1, e2, alignment)

    candidates = []
    for ext, direction in ((best_max, "<="), (best_min, ">=")):
        if ext.value is None or not INFORMATIVE_LO <= abs(ext.value) <= INFORMATIVE_HI:
            continue
        rec = recognize_algebraic(ext.value)
        candidates.append((ext, direction, rec))
    recognized = [c for c in candidates if c[2] is not None]
    pool = recognized or candidates
    if not pool:
        return CompareResult(expr1=e1.text(), expr2=e2.text(), kind="extremal",
                             detail={"reason": "ratio appears unbounded"},
                             elapsed_ms=(time.monotonic() - started) * 1000.0)
    pool.sort(key=lambda c: (c[2] is None,
                             c[2]["weight"] if c[2] else math.inf,
                             c[1] != "<="))
    ext, direction, rec = pool[0]
    detail = {
        "statement": f"({e1.text()}) {direction} k * ({e2.text()})",
        "witness": {pid: [float(x) for x in coords]
                    for pid, coords in ext.witness.items()},
        "samples": samples,
    }
    result = CompareResult(expr1=e1.text(), expr2=e2.text(), kind="extremal",
                           value=ext.value, certified=False,
                           detail=detail)
    if rec is not None:
        result.recognized = True
        result.exact = rec["description"]
        detail["minimal_polynomial"] = rec["minimal_polynomial"]
    else:
        result.recognized = False
        detail["note"] = "unrecognized: reported as decimal only"
    result.elapsed_ms = (time.monotonic() - started) * 1000.0
    return result


def _rat_str(q: Fraction) -> str:
    return (str(q.numerator) if q.denominator == 1
            else f"{q.numerator}/{q.denominator}")


def _alignment(construction) -> dict:
    from ..construction.alignment import alignment_map
    return alignment_map(construction)


def _sample_ratio(construction, e1, e2, alignment, seed,
                  pinned: dict | None = None):
    try:
        inst = sample_instance(construction, seed=seed, pinned=pinned)
    except (UnsatisfiableInstance, ValueError):
        return None, None
    v2 = eval_measure_expr(e2, inst, alignment)
    if not math.isfinite(v2) or abs(v2) < 1e-12:
        return None, None
    v1 = eval_measure_expr(e1, inst, alignment)
    if not math.isfinite(v1):
        return None, None
    return v1 / v2, inst


class _Extremum:
    """Running max (sign=+1) or min (sign=-1) of the sampled ratio."""

    def __init__(self, sign: int, free_ids: Sequence[str]):
        self.sign = sign
        self.free_ids = list(free_ids)
        self.value: Optional[float] = None
        self.witness: dict = {}

    def offer(self, ratio: float, inst) -> None:
        if self.value is None or self.sign * (ratio - self.value) > 0:
            self.value = ratio
            self.witness = {pid: inst.point(pid) for pid in self.free_ids}

    def refine(self, construction, e1, e2, alignment) -> None:
        """Coordinate-wise golden-section walk around the best sample."""
        if self.value is None:
            return
        phi = (math.sqrt(5.0) - 1.0) / 2.0
        coords = {pid: [float(x) for x in v]
                  for pid, v in self.witness.items()}
        axes = [(pid, i) for pid in sorted(coords)
                for i in range(len(coords[pid]))]
        if not axes:
            return
        span = 1.0

        def value_at(c):
            pinned = {pid: tuple(v) for pid, v in c.items()}
            ratio, _ = _sample_ratio(construction, e1, e2, alignment,
                                     seed=0, pinned=pinned)
            return ratio

        for round_no in range(REFINE_ROUNDS):
            pid, axis = axes[round_no % len(axes)]
            center = coords[pid][axis]
            lo, hi = center - span, center + span
            x1 = hi - phi * (hi - lo)
            x2 = lo + phi * (hi - lo)

            def f(x):
                trial = {p: list(v) for p, v in coords.items()}
                trial[pid][axis] = x
                r = value_at(trial)
                return -math.inf if r is None else self.sign * r

            f1, f2 = f(x1), f(x2)
            for _ in range(12):
                if f1 < f2:
                    lo, x1, f1 = x1, x2, f2
                    x2 = lo + phi * (hi - lo)
                    f2 = f(x2)
                else:
                    hi, x2, f2 = x2, x1, f1
                    x1 = hi - phi * (hi - lo)
                    f1 = f(x1)
            best_x = x1 if f1 >= f2 else x2
            best_f = max(f1, f2)
            if best_f > self.sign * self.value:
                coords[pid][axis] = best_x
                self.value = self.sign * best_f
                self.witness = {p: tuple(v) for p, v in coords.items()}
            span *= 0.7 if round_no % len(axes) == len(axes) - 1 else 1.0


def recognize_algebraic(value: float,
                        tol: float = RECOGNITION_TOL,
                        bound: int = COEFF_BOUND) -> Optional[dict]:
    """Recognize `value` as a root of a*k^2 + b*k + c with small integer
    coefficients; smallest |a|+|b|+|c| wins."""
    if not math.isfinite(value):
        return None
    import numpy as np
    best = None
    k, k2 = value, value * value
    bs = np.arange(-bound, bound + 1, dtype=np.float64)
    for a in range(0, bound + 1):
        cs = np.rint(-a * k2 - bs * k)
        residual = np.abs(a * k2 + bs * k + cs)
        # scale must not be floored: an all-tiny polynomial (e.g. a*k^2 at
        # k ~ 1e-6) would otherwise pass on absolute tolerance alone
        scale = abs(a * k2) + np.abs(bs * k) + np.abs(cs)
        hits = np.nonzero((residual <= tol * scale)
                          & (np.abs(cs) <= bound))[0]
        for idx in hits:
            b, c = int(bs[idx]), int(cs[idx])
            if a == 0 and b == 0:
                continue
            if a == 0 and b < 0:
                b, c = -b, -c
            weight = abs(a) + abs(b) + abs(c)
            if best is None or weight < best["weight"]:
                best = {"a": a, "b": b, "c": c, "weight": weight}
        if best is not None and best["weight"] <= a:
            break  # no later a can beat it
    if best is None:
        return None
    a, b, c = best["a"], best["b"], best["c"]
    if a == 0:
        ratio = Fraction(-c, b)
        description = _rat_str(ratio)
        minimal = _poly_str([(b, 1), (c, 0)])
    else:
        description = _describe_quadratic(a, b, c, value)
        minimal = _poly_str([(a, 2), (b, 1), (c, 0)])
    return {"description": description, "minimal_polynomial": minimal,
            "weight": best["weight"], "coefficients": [a, b, c]}


def _poly_str(coeffs) -> str:
    parts = []
    for coeff, power in coeffs:
        if coeff == 0:
            continue
        mag = abs(coeff)
        var = {0: "", 1: "k", 2: "k^2"}[power]
        body = (var or "1") if mag == 1 and var else f"{mag}{'*' + var if var else ''}"
        sign = "-" if coeff < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _sqrt_reduce(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d)."""
    s, d = 1, n
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


def _describe_quadratic(a: int, b: int, c: int, value: float) -> str:
    """Closed form (-b ± s*sqrt(d)) / 2a in lowest terms, root nearest value."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return f"root of {_poly_str([(a, 2), (b, 1), (c, 0)])}"
    if disc == 0:
        return _rat_str(Fraction(-b, 2 * a))
    s, d = _sqrt_reduce(disc)
    if d == 1:
        plus = Fraction(-b + s, 2 * a)
        minus = Fraction(-b - s, 2 * a)
        pick = plus if abs(float(plus) - value) <= abs(float(minus) - value) \
            else minus
        return _rat_str(pick)
    sign = 1 if abs((-b + s * math.sqrt(d)) / (2 * a) - value) <= \
        abs((-b - s * math.sqrt(d)) / (2 * a) - value) else -1
    g = math.gcd(math.gcd(abs(b), s), abs(2 * a))
    b_, s_, den = -b // g, s // g, 2 * a // g
    radical = f"sqrt({d})" if s_ == 1 else f"{s_}*sqrt({d})"
    if b_ == 0:
        num = radical if sign > 0 else f"-{radical}"
        return num if den == 1 else f"{num}/{den}"
    num = f"{b_} {'+' if sign > 0 else '-'} {radical}"
    return f"({num})/{den}" if den != 1 else num
