"""Result types for the reasoning operations, all JSON-serializable."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

TRUE = "TRUE"
FALSE = "FALSE"
TRUE_ON_PARTS = "TRUE_ON_PARTS"
UNKNOWN = "UNKNOWN"


class ContradictoryConstruction(ValueError):
    """Every nondegenerate interpretation of the construction is empty."""


def _rat(q: Fraction) -> str:
    return (str(q.numerator) if q.denominator == 1
            else f"{q.numerator}/{q.denominator}")


@dataclass
class ProveResult:
    statement: str
    predicate: str
    verdict: str
    certificate: dict = field(default_factory=dict)
    conditions: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "statement": self.statement,
            "predicate": self.predicate,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }
        if self.conditions:
            out["conditions"] = list(self.conditions)
        return out


@dataclass
class RelateResult:
    expr1: str
    expr2: str
    kind: str                 # "ratio" | "relation" | "unknown"
    ratio: Optional[Fraction] = None
    relation: Optional[str] = None   # canonical polynomial in w1, w2
    certified: bool = False
    detail: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "expr1": self.expr1,
            "expr2": self.expr2,
            "kind": self.kind,
            "certified": self.certified,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }
        if self.ratio is not None:
            out["ratio"] = _rat(self.ratio)
            out["ratio_float"] = float(self.ratio)
        if self.relation is not None:
            out["relation"] = self.relation
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CompareResult:
    expr1: str
    expr2: str
    kind: str                  # "ratio" | "extremal"
    value: Optional[float] = None
    exact: Optional[str] = None      # recognized algebraic description
    recognized: bool = False
    certified: bool = False
    detail: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "expr1": self.expr1,
            "expr2": self.expr2,
            "kind": self.kind,
            "certified": self.certified,
            "recognized": self.recognized,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }
        if self.value is not None:
            out["value"] = self.value
        if self.exact is not None:
            out["exact"] = self.exact
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class LocusResult:
    tracer: str
    factors: list = field(default_factory=list)
    # each factor: {"equation": str, "degenerate": bool}
    axes: list = field(default_factory=list)   # output variable names
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "tracer": self.tracer,
            "factors": list(self.factors),
            "axes": list(self.axes),
            "elapsed_ms": round(self.elapsed_ms, 1),
        }


@dataclass
class EnvelopeResult:
    family: str
    factors: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "factors": list(self.factors),
            "elapsed_ms": round(self.elapsed_ms, 1),
        }


@dataclass
class DiscoveryResult:
    target: Optional[str]
    facts: list = field(default_factory=list)
    uncertified: list = field(default_factory=list)
    groups: dict = field(default_factory=dict)
    candidates_tested: int = 0
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "facts": list(self.facts),
            "uncertified": list(self.uncertified),
            "groups": self.groups,
            "candidates_tested": self.candidates_tested,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }
