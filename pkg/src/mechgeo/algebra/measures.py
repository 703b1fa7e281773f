"""Attach measured quantities (lengths, areas, circumradii) as variables.

A distance is a square root, so it cannot be a polynomial in coordinates.
Each measured quantity therefore becomes a fresh variable tied to the
coordinates by a defining polynomial:

* plain length  L of PQ:        L^2 - |Q - P|^2,  with L >= 0 by convention
* aligned length L of PQ:       L * ref - (Q - P) . dir(carrier)
  when P and Q share a straight carrier; ref is the carrier's reference
  length (ref^2 = |dir|^2, ref >= 0), so L is the SIGNED coordinate of the
  displacement along the carrier's construction direction. Collinear
  distances then add algebraically, matching the numeric evaluator.
* signed area a of ABC:         2 a - cross(B - A, C - A)
* circumradius R of ABC:        4 cross^2 R^2 - dAB dBC dCA,  R >= 0

Named linear combinations get one more variable (s - sum of terms), so a
ratio claim about two expressions becomes a single linear thesis in the two
sum variables.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..construction.alignment import alignment_map
from ..construction.model import MeasureAtom, MeasureExpr, Predicate
from ..poly import Polynomial
from .algebraize import AlgebraicModel, _dot, _sqdist, _sub, cross_components
from .predicates import translate_predicate


@dataclass(frozen=True)
class MeasureVariable:
    name: str
    kind: str                 # length | ref | area | circumradius | sum
    nonneg: bool
    defining: tuple[Polynomial, ...]
    square: Optional[Polynomial] = None  # coordinate polynomial equal to value^2
    atom: Optional[MeasureAtom] = None   # canonical atom, when there is one


@dataclass
class MeasureModel:
    """An algebraic model extended with measure variables."""
    model: AlgebraicModel
    alignment: dict
    variables: dict[str, MeasureVariable] = field(default_factory=dict)
    sums: dict[str, MeasureExpr] = field(default_factory=dict)
    _atom_terms: dict = field(default_factory=dict)  # registry key -> (sign, var)

    def numeric_assignment(self, instance) -> dict:
        """Coordinate and measure values at an instance (measure values come
        from the independent numeric evaluator, so defining polynomials can
        be cross-checked against it)."""
        from ..construction.numeric import eval_measure_atom
        out = self.model.assignment_for(instance)
        for name, mv in self.variables.items():
            if mv.kind == "sum":
                continue
            if mv.kind == "ref":
                d = mv.square.evaluate(out)
                out[name] = float(d) ** 0.5
            else:
                out[name] = eval_measure_atom(mv.atom, instance, self.alignment)
        for name, expr in self.sums.items():
            total = 0.0
            for coeff, atom in expr.terms:
                base, var = self._atom_terms[_atom_key(atom, self.alignment)]
                sign = base * _atom_sign(atom, self.alignment)
                total += float(coeff) * sign * float(out[var])
            out[name] = total
        return out


def _perm_sign(seq: Sequence[str]) -> int:
    """Parity of the permutation sorting seq."""
    items = list(seq)
    sign = 1
    for i in range(len(items)):
        j = min(range(i, len(items)), key=lambda k: items[k])
        if j != i:
            items[i], items[j] = items[j], items[i]
            sign = -sign
    return sign


def _atom_key(atom: MeasureAtom, alignment: dict):
    if atom.kind == "dist":
        pair = frozenset(atom.points)
        if pair in alignment:
            return ("dist-aligned", alignment[pair], tuple(sorted(atom.points)))
        return ("dist", tuple(sorted(atom.points)))
    return (atom.kind, tuple(sorted(atom.points)))


def _var_stem(kind: str, points: Sequence[str]) -> str:
    prefix = {"dist": "len", "area": "area", "circumradius": "rad"}[kind]
    return prefix + "_" + "_".join(points)


def attach_measures(model: AlgebraicModel,
                    named_exprs: Sequence[tuple[str, MeasureExpr]],
                    alignment: Optional[dict] = None) -> MeasureModel:
    if alignment is None:
        alignment = alignment_map(model.construction)
    mm = MeasureModel(model=replace(model), alignment=alignment)
    taken = set(model.free_vars) | set(model.dep_vars)
    new_vars: list[str] = []
    new_hyps: list[Polynomial] = []
    new_nondeg: list[Polynomial] = []
    ref_by_direction: dict[str, str] = {}

    def add_variable(mv: MeasureVariable) -> None:
        if mv.name in taken:
            raise ValueError(f"measure variable '{mv.name}' collides")
        taken.add(mv.name)
        mm.variables[mv.name] = mv
        new_vars.append(mv.name)
        new_hyps.extend(mv.defining)

    def ref_for_carrier(carrier_id: str) -> tuple[str, tuple]:
        carrier = model.lines[carrier_id]
        direction = carrier.direction
        dir_key = "|".join(p.canonical_str() for p in direction)
        if dir_key in ref_by_direction:
            return ref_by_direction[dir_key], direction
        name = f"ref_{carrier_id}"
        sq = _dot(direction, direction)
        v = Polynomial.var(name)
        add_variable(MeasureVariable(
            name=name, kind="ref", nonneg=True,
            defining=(v * v - sq,), square=sq))
        new_nondeg.append(sq)
        ref_by_direction[dir_key] = name
        return name, direction

    def register_atom(atom: MeasureAtom) -> None:
        """Create the variable for the canonical (sorted-points) atom."""
        key = _atom_key(atom, alignment)
        if key in mm._atom_terms:
            return
        pts = tuple(sorted(atom.points))
        P = model.point
        if atom.kind == "dist":
            a, b = P(pts[0]), P(pts[1])
            name = _var_stem("dist", pts)
            v = Polynomial.var(name)
            pair = frozenset(atom.points)
            if pair in alignment:
                ref_name, direction = ref_for_carrier(alignment[pair])
                proj = _dot(_sub(b, a), direction)
                add_variable(MeasureVariable(
                    name=name, kind="length", nonneg=False,
                    defining=(v * Polynomial.var(ref_name) - proj,),
                    atom=MeasureAtom("dist", pts)))
            else:
                sq = _sqdist(a, b)
                add_variable(MeasureVariable(
                    name=name, kind="length", nonneg=True,
                    defining=(v * v - sq,), square=sq,
                    atom=MeasureAtom("dist", pts)))
        elif atom.kind == "area":
            a, b, c = (P(x) for x in pts)
            name = _var_stem("area", pts)
            v = Polynomial.var(name)
            cross = cross_components(_sub(b, a), _sub(c, a))[0]
            add_variable(MeasureVariable(
                name=name, kind="area", nonneg=False,
                defining=(Polynomial.const(2) * v - cross,),
                atom=MeasureAtom("area", pts)))
        else:  # circumradius
            a, b, c = (P(x) for x in pts)
            name = _var_stem("circumradius", pts)
            v = Polynomial.var(name)
            cross = cross_components(_sub(b, a), _sub(c, a))[0]
            sides = _sqdist(a, b) * _sqdist(b, c) * _sqdist(c, a)
            add_variable(MeasureVariable(
                name=name, kind="circumradius", nonneg=True,
                defining=(Polynomial.const(4) * cross * cross * v * v - sides,),
                atom=MeasureAtom("circumradius", pts)))
            new_nondeg.append(cross)
        mm._atom_terms[key] = (1, name)

    for sum_name, expr in named_exprs:
        terms: list[tuple[Fraction, int, str]] = []
        for coeff, atom in expr.terms:
            register_atom(atom)
            base_sign, var = mm._atom_terms[_atom_key(atom, alignment)]
            sign = _atom_sign(atom, alignment)
            terms.append((coeff, base_sign * sign, var))
        if sum_name in taken:
            raise ValueError(f"sum variable '{sum_name}' collides")
        body = Polynomial.var(sum_name)
        for coeff, sign, var in terms:
            body = body - Polynomial.const(coeff * sign) * Polynomial.var(var)
        add_variable(MeasureVariable(
            name=sum_name, kind="sum", nonneg=False, defining=(body,)))
        mm.sums[sum_name] = expr

    mm.model.dep_vars = model.dep_vars + tuple(new_vars)
    mm.model.hypotheses = model.hypotheses + tuple(new_hyps)
    seen = {p.primitive().canonical_str() for p in model.nondegeneracy}
    extra = []
    for p in new_nondeg:
        key = p.primitive().canonical_str()
        if key not in seen and not p.is_zero():
            seen.add(key)
            extra.append(p)
    mm.model.nondegeneracy = model.nondegeneracy + tuple(extra)
    return mm


def _atom_sign(atom: MeasureAtom, alignment: dict) -> int:
    """Sign relating the atom as written to its canonical (sorted) form."""
    pts = tuple(sorted(atom.points))
    if atom.kind == "area":
        return _perm_sign(atom.points)
    if atom.kind == "dist" and frozenset(atom.points) in alignment:
        return 1 if tuple(atom.points) == pts else -1
    return 1


@dataclass(frozen=True)
class PreparedStatement:
    """A statement ready for algebraic work: possibly-extended model plus the
    thesis polynomials that must vanish."""
    model: AlgebraicModel
    theses: tuple[Polynomial, ...]
    measures: Optional[MeasureModel] = None


def prepare_statement(model: AlgebraicModel, pred: Predicate,
                      sum_names: tuple[str, str] = ("w1", "w2"),
                      alignment: Optional[dict] = None) -> PreparedStatement:
    if pred.kind != "measure_ratio":
        return PreparedStatement(model=model,
                                 theses=translate_predicate(pred, model))
    e1, e2, ratio = pred.args
    mm = attach_measures(model, [(sum_names[0], e1), (sum_names[1], e2)],
                         alignment=alignment)
    w1 = Polynomial.var(sum_names[0])
    w2 = Polynomial.var(sum_names[1])
    thesis = (Polynomial.const(ratio.denominator) * w1
              - Polynomial.const(ratio.numerator) * w2)
    return PreparedStatement(model=mm.model, theses=(thesis,), measures=mm)
