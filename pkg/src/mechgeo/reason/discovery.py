"""Find and certify every fact of a fixed shape about a figure.

The pipeline answers an interactive "what is true here?" query: enumerate
candidate statements about a chosen point (or, kind-wide, about every
object), screen them numerically at several sampled instances, then certify
the survivors symbolically against the construction's shared saturated
hypothesis ideal. Certified facts are grouped — collinear facts into
maximal point sets, parallel facts into direction classes, equal-length
facts into congruence classes — and reported in a deterministic order
regardless of enumeration or completion order.

Candidate shapes about a target point:

* coincide(target, X) for every other named point X;
* collinear triples {target, X, Y};
* parallel pairs: a segment with target as an endpoint against a segment
  with disjoint endpoints — pairs whose four endpoints are numerically
  collinear are dropped (they are collinearity facts, reported as such);
* perpendicular and equal-length pairs: a segment with target as an
  endpoint against any other named segment (shared endpoints allowed);
* concyclic quadruples {target, X, Y, Z} — numerically-collinear
  quadruples are dropped, since the defining determinant also vanishes
  when the four points lie on one line.

Points that numerically coincide with an earlier point are removed from
the candidate universe (their facts would duplicate the representative's);
the coincidence itself is still reported. The numeric screen keeps a
candidate only when its scale-invariant residual stays at most `tol` at
every sampled instance, so screening discards work, never truth: a fact
passing at random instances and certified by radical membership holds on
every nondegenerate instance.
"""
from __future__ import annotations

import itertools
import time
from typing import Iterable, Optional, Sequence

from ..construction.model import Construction, Predicate, SegRef
from ..construction.numeric import DEFAULT_TOL, predicate_residual
from ..construction.sampler import sample_instance
from ..limits import ResourceLimitError
from ..poly import dimension, radical_membership
from .budget import Budget
from .results import TRUE, TRUE_ON_PARTS, DiscoveryResult
from .system import ProofSystem

FILTER_SEEDS: tuple[int, ...] = (0, 1, 2, 3, 4)
CANDIDATE_CAP = 20_000
DISCOVERY_KINDS = ("coincide", "collinear", "parallel", "perpendicular",
                   "equal_length", "concyclic")


class CandidateOverflowError(ValueError):
    """Kind-wide enumeration would exceed the candidate cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(
            f"{count} candidates exceed the cap of {cap}; "
            "restrict the figure or raise the cap")
        self.count = count
        self.cap = cap


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _seg_key(seg: SegRef) -> str:
    a, b = sorted((seg.a, seg.b))
    return f"{a}-{b}"


def _canonical(kind: str, args) -> Predicate:
    if kind in ("collinear", "concyclic", "coincide"):
        return Predicate(kind, tuple(sorted(args)))
    segs = sorted((SegRef(*sorted((s.a, s.b))) for s in args),
                  key=lambda s: (s.a, s.b))
    return Predicate(kind, tuple(segs))


def _group_key(kind: str, members: Iterable[str]) -> str:
    members = sorted(members)
    joiner = "|" if members and "-" in members[0] else ","
    return f"{kind}:{joiner.join(members)}"


# ---------------------------------------------------------------------------
# numeric screening
# ---------------------------------------------------------------------------

class _Screen:
    """Numeric candidate filter over a fixed tuple of sampled instances."""

    def __init__(self, construction: Construction,
                 seeds: Sequence[int], tol: float):
        self.instances = [sample_instance(construction, seed=s)
                          for s in seeds]
        self.tol = tol

    def passes(self, pred: Predicate) -> bool:
        return all(predicate_residual(pred, inst) <= self.tol
                   for inst in self.instances)

    def coincident(self, a: str, b: str) -> bool:
        return self.passes(Predicate("coincide", tuple(sorted((a, b)))))

    def all_collinear(self, points: Sequence[str]) -> bool:
        p0, p1, *rest = points
        return all(self.passes(Predicate("collinear", (p0, p1, r)))
                   for r in rest)

    def universe(self, construction: Construction,
                 target: Optional[str] = None) -> list[str]:
        """Named points minus numerically-coincident duplicates; the
        earliest point of a coincidence class represents it, except that
        the target always stays."""
        reps: list[str] = []
        alias_of: dict[str, str] = {}
        for p in construction.point_ids():
            rep = next((r for r in reps if self.coincident(p, r)), None)
            if rep is None:
                reps.append(p)
            else:
                alias_of[p] = rep
        if target in alias_of:
            rep = alias_of.pop(target)
            reps[reps.index(rep)] = target
            for k, v in alias_of.items():
                if v == rep:
                    alias_of[k] = target
            alias_of[rep] = target
        return reps


# ---------------------------------------------------------------------------
# candidate enumeration
# ---------------------------------------------------------------------------

def _target_candidates(construction: Construction, target: str,
                       screen: _Screen) -> list[Predicate]:
    universe = screen.universe(construction, target=target)
    others = [p for p in universe if p != target]
    cands: list[Predicate] = []

    for p in construction.point_ids():
        if p != target:
            cands.append(_canonical("coincide", (target, p)))

    for x, y in itertools.combinations(others, 2):
        cands.append(_canonical("collinear", (target, x, y)))

    all_segs = [SegRef(a, b)
                for a, b in itertools.combinations(sorted(universe), 2)]
    seen: set[frozenset] = set()
    for x in others:
        s1 = SegRef(*sorted((target, x)))
        for s2 in all_segs:
            if {s2.a, s2.b} == {s1.a, s1.b}:
                continue
            pair_id = frozenset((frozenset((s1.a, s1.b)),
                                 frozenset((s2.a, s2.b))))
            if pair_id in seen:
                continue
            seen.add(pair_id)
            if (not ({s1.a, s1.b} & {s2.a, s2.b})
                    and not screen.all_collinear((s1.a, s1.b, s2.a, s2.b))):
                cands.append(_canonical("parallel", (s1, s2)))
            cands.append(_canonical("perpendicular", (s1, s2)))
            cands.append(_canonical("equal_length", (s1, s2)))

    if construction.dimension == 2:
        for triple in itertools.combinations(others, 3):
            quad = (target,) + triple
            if not screen.all_collinear(quad):
                cands.append(_canonical("concyclic", quad))
    return cands


def _kind_candidates(construction: Construction, kind: str,
                     screen: _Screen) -> list[Predicate]:
    universe = screen.universe(construction)
    if kind == "coincide":
        return [_canonical("coincide", pair)
                for pair in itertools.combinations(
                    construction.point_ids(), 2)]
    if kind == "collinear":
        return [_canonical("collinear", t)
                for t in itertools.combinations(universe, 3)]
    if kind == "concyclic":
        if construction.dimension != 2:
            raise ValueError("concyclic discovery is only available "
                             "in the plane")
        return [_canonical("concyclic", q)
                for q in itertools.combinations(universe, 4)
                if not screen.all_collinear(q)]
    segs = [SegRef(a, b)
            for a, b in itertools.combinations(sorted(universe), 2)]
    cands = []
    for s1, s2 in itertools.combinations(segs, 2):
        if kind == "parallel" and (
                {s1.a, s1.b} & {s2.a, s2.b}
                or screen.all_collinear((s1.a, s1.b, s2.a, s2.b))):
            continue
        cands.append(_canonical(kind, (s1, s2)))
    return cands


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

class _Certifier:
    """Per-candidate symbolic certification against one shared system.

    Every discovery predicate translates to coordinate theses, so a
    candidate is certified exactly when each thesis lies in the radical of
    the saturated hypothesis ideal. The verdict is TRUE when the ideal's
    dimension matches the construction's degrees of freedom (checked once)
    and TRUE_ON_PARTS when nondegeneracy silently pinned the figure.
    """

    def __init__(self, construction: Construction, budget: Budget):
        self.system = ProofSystem(construction)
        self.budget = budget
        self._verdict_on_success: Optional[str] = None

    def _audit(self, setup) -> str:
        if self._verdict_on_success is None:
            dim = dimension(setup.ideal, variables=setup.ideal.variables,
                            limits=self.budget.limits())
            self._verdict_on_success = (
                TRUE if dim == len(setup.free_vars) else TRUE_ON_PARTS)
        return self._verdict_on_success

    def certify(self, pred: Predicate) -> Optional[str]:
        setup = self.system.statement_setup(pred, self.budget)
        verdict = self._audit(setup)
        if all(radical_membership(t, setup.ideal,
                                  limits=self.budget.limits())
               for t in setup.theses):
            return verdict
        return None


# ---------------------------------------------------------------------------
# grouping
# ---------------------------------------------------------------------------

def _merge_point_sets(triples: list, overlap: int) -> list[set]:
    sets = [set(t) for t in triples]
    merged = True
    while merged:
        merged = False
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if len(sets[i] & sets[j]) >= overlap:
                    sets[i] |= sets.pop(j)
                    merged = True
                    break
            if merged:
                break
    return sets


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def class_of(self, x: str) -> set:
        root = self.find(x)
        return {y for y in self.parent if self.find(y) == root}


def _group(certified: list[tuple[Predicate, str]]) -> tuple[list, dict]:
    collinear_sets = _merge_point_sets(
        [p.args for p, _ in certified if p.kind == "collinear"], 2)
    direction = _UnionFind()
    congruence = _UnionFind()
    for pred, _ in certified:
        if pred.kind == "parallel":
            direction.union(_seg_key(pred.args[0]), _seg_key(pred.args[1]))
        elif pred.kind == "equal_length":
            congruence.union(_seg_key(pred.args[0]), _seg_key(pred.args[1]))

    groups: dict[str, dict] = {}
    facts: list[dict] = []

    def register(kind: str, members: Iterable[str]) -> str:
        key = _group_key(kind, members)
        groups.setdefault(key, {"kind": kind, "members": sorted(members)})
        return key

    for pred, verdict in certified:
        if pred.kind == "collinear":
            home = next(s for s in collinear_sets if set(pred.args) <= s)
            key = register("collinear", home)
        elif pred.kind == "parallel":
            key = register("parallel",
                           direction.class_of(_seg_key(pred.args[0])))
        elif pred.kind == "equal_length":
            key = register("equal_length",
                           congruence.class_of(_seg_key(pred.args[0])))
        elif pred.kind in ("concyclic", "coincide"):
            key = register(pred.kind, pred.args)
        else:  # perpendicular: one group per certified pair
            key = register(pred.kind, [_seg_key(s) for s in pred.args])
        facts.append({"predicate": pred.text(), "verdict": verdict,
                      "group": key})
    facts.sort(key=lambda f: (f["group"], f["predicate"]))
    return facts, dict(sorted(groups.items()))


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def _run(construction: Construction, target: Optional[str],
         cands: list[Predicate], screen: _Screen, budget: Budget,
         started: float) -> DiscoveryResult:
    survivors = [p for p in cands if screen.passes(p)]
    certifier = _Certifier(construction, budget)
    certified: list[tuple[Predicate, str]] = []
    uncertified: list[dict] = []
    exhausted = False
    for pred in survivors:
        if exhausted:
            uncertified.append({"predicate": pred.text(),
                                "reason": "budget_exhausted"})
            continue
        try:
            verdict = certifier.certify(pred)
        except ResourceLimitError as e:
            uncertified.append({"predicate": pred.text(),
                                "reason": f"resource_limit:{e.resource}"})
            exhausted = budget.remaining_ms() <= 0
            continue
        if verdict is not None:
            certified.append((pred, verdict))
        else:
            uncertified.append({"predicate": pred.text(),
                                "reason": "no_certificate"})
    facts, groups = _group(certified)
    uncertified.sort(key=lambda u: u["predicate"])
    return DiscoveryResult(target=target, facts=facts,
                           uncertified=uncertified, groups=groups,
                           candidates_tested=len(cands),
                           elapsed_ms=(time.monotonic() - started) * 1000.0)


def discover(construction: Construction, target: str, *,
             timeout_ms: Optional[int] = None,
             seeds: Sequence[int] = FILTER_SEEDS,
             tol: float = DEFAULT_TOL) -> DiscoveryResult:
    """Certified facts involving one chosen point of the figure."""
    started = time.monotonic()
    if target not in construction.point_ids():
        raise ValueError(f"discovery target '{target}' is not a named point")
    budget = Budget(timeout_ms)
    screen = _Screen(construction, seeds, tol)
    cands = _target_candidates(construction, target, screen)
    return _run(construction, target, cands, screen, budget, started)


def discover_all(construction: Construction, kind: str, *,
                 timeout_ms: Optional[int] = None,
                 seeds: Sequence[int] = FILTER_SEEDS,
                 tol: float = DEFAULT_TOL,
                 candidate_cap: int = CANDIDATE_CAP) -> DiscoveryResult:
    """Certified facts of one kind over every object of the figure."""
    started = time.monotonic()
    if kind not in DISCOVERY_KINDS:
        raise ValueError(
            f"unknown discovery kind '{kind}'; "
            f"expected one of {', '.join(DISCOVERY_KINDS)}")
    budget = Budget(timeout_ms)
    screen = _Screen(construction, seeds, tol)
    cands = _kind_candidates(construction, kind, screen)
    if len(cands) > candidate_cap:
        raise CandidateOverflowError(len(cands), candidate_cap)
    return _run(construction, None, cands, screen, budget, started)
