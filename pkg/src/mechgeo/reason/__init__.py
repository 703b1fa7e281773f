"""Decision procedures built on the algebra layer."""
from .budget import Budget, DEFAULT_TIMEOUT_MS
from .conditions import discover_conditions
from .discovery import (CANDIDATE_CAP, DISCOVERY_KINDS,
                        CandidateOverflowError, discover, discover_all)
from .envelope import NoEnvelopeError, envelope, envelope_from_family
from .locus import TrivialLocusError, locus_equation
from .prove import prove, prove_statement
from .relation import NoRelationError, compare, recognize_algebraic, relate
from .results import (FALSE, TRUE, TRUE_ON_PARTS, UNKNOWN, CompareResult,
                      ContradictoryConstruction, DiscoveryResult,
                      EnvelopeResult, LocusResult, ProveResult, RelateResult)
from .system import ProofSystem, StatementSetup

__all__ = [
    "Budget", "DEFAULT_TIMEOUT_MS", "discover_conditions", "prove",
    "prove_statement", "FALSE", "TRUE", "TRUE_ON_PARTS", "UNKNOWN",
    "CompareResult", "ContradictoryConstruction", "DiscoveryResult",
    "EnvelopeResult", "LocusResult", "ProveResult", "RelateResult",
    "ProofSystem", "StatementSetup",
    "CANDIDATE_CAP", "DISCOVERY_KINDS", "CandidateOverflowError",
    "discover", "discover_all",
    "NoEnvelopeError", "envelope", "envelope_from_family",
    "TrivialLocusError", "locus_equation",
    "NoRelationError", "compare", "recognize_algebraic", "relate",
]
