"""Operation layer shared by the CLI and the HTTP service.

Each function takes a parsed construction plus plain-data parameters,
invokes exactly one reasoner entry point, and returns a JSON-ready dict.
All failure modes are normalized to `OperationError`, which carries the
HTTP status and CLI exit code jointly, so the two front ends cannot drift.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from ..construction import (Construction, ParseError, PinError, SemanticError,
                            UnsatisfiableInstance, parse,
                            parse_measure_expression, sample_instance)
from ..limits import ResourceLimitError
from ..reason import (CandidateOverflowError, ContradictoryConstruction,
                      NoEnvelopeError, NoRelationError, TrivialLocusError,
                      compare, discover, discover_all, envelope,
                      locus_equation, prove, relate)
from .wire import OperationError, resolve_timeout_ms


def parse_source(source: str) -> Construction:
    try:
        return parse(source)
    except ParseError as e:
        raise OperationError("parse_error", str(e), http_status=400,
                             line=e.line, column=e.column) from e
    except SemanticError as e:
        extra = {"line": e.line} if e.line is not None else {}
        raise OperationError("semantic_error", str(e), http_status=400,
                             **extra) from e


def parse_expression(text: str):
    try:
        return parse_measure_expression(text)
    except (ParseError, SemanticError) as e:
        raise OperationError("invalid_expression", str(e)) from e


def bind_expression(construction: Construction, text: str):
    """Parse a measure expression and check every referenced point exists."""
    expr = parse_expression(text)
    known = set(construction.point_ids())
    for atom in expr.atoms():
        for pid in atom.points:
            if pid not in known:
                raise OperationError(
                    "invalid_expression",
                    f"'{pid}' in '{text}' is not a point of the construction")
    return expr


def _guarded(fn, **kwargs):
    try:
        return fn(**kwargs)
    except ContradictoryConstruction as e:
        raise OperationError("contradictory_construction", str(e)) from e
    except ResourceLimitError as e:
        raise OperationError("resource_limit", str(e), http_status=503,
                             exit_code=2, resource=e.resource) from e
    except CandidateOverflowError as e:
        raise OperationError("candidate_overflow", str(e), http_status=503,
                             exit_code=2, count=e.count, cap=e.cap) from e


def op_instance(construction: Construction, *, seed: int = 0,
                pins: Optional[dict] = None) -> dict:
    try:
        pinned = {pid: tuple(Fraction(c) for c in coords)
                  for pid, coords in (pins or {}).items()}
    except (ValueError, ZeroDivisionError) as e:
        raise OperationError("invalid_pin", f"bad pin coordinate: {e}") from e
    try:
        inst = sample_instance(construction, seed=seed, pinned=pinned)
    except PinError as e:
        raise OperationError("invalid_pin", str(e)) from e
    except UnsatisfiableInstance as e:
        raise OperationError("unsatisfiable_instance", str(e)) from e
    return {
        "seed": seed,
        "dimension": construction.dimension,
        "kinds": dict(sorted(construction.objects.items())),
        "objects": {oid: list(coords) for oid, coords
                    in sorted(inst.render_coordinates().items())},
    }


def op_prove(construction: Construction, *, statement: Optional[str] = None,
             wlog: bool = True, timeout_ms: Optional[int] = None) -> dict:
    if statement is not None:
        labels = [s.label for s in construction.statements]
        if statement not in labels:
            raise OperationError(
                "invalid_statement",
                f"no statement labelled '{statement}' "
                f"(have: {', '.join(labels) or 'none'})")
    if not construction.statements:
        raise OperationError("invalid_statement",
                             "construction has no statements to prove")
    results = _guarded(prove, construction=construction,
                       statement_label=statement, wlog=wlog,
                       timeout_ms=resolve_timeout_ms(timeout_ms))
    return {"results": [r.to_dict() for r in results]}


def op_discover(construction: Construction, *, target: str,
                seeds: Optional[Sequence[int]] = None,
                timeout_ms: Optional[int] = None) -> dict:
    kwargs = {"construction": construction, "target": target,
              "timeout_ms": resolve_timeout_ms(timeout_ms)}
    if seeds is not None:
        kwargs["seeds"] = tuple(seeds)
    try:
        result = _guarded(discover, **kwargs)
    except ValueError as e:
        if isinstance(e, OperationError):
            raise
        raise OperationError("invalid_target", str(e)) from e
    return result.to_dict()


def op_discover_all(construction: Construction, *, kind: str,
                    seeds: Optional[Sequence[int]] = None,
                    timeout_ms: Optional[int] = None) -> dict:
    kwargs = {"construction": construction, "kind": kind,
              "timeout_ms": resolve_timeout_ms(timeout_ms)}
    if seeds is not None:
        kwargs["seeds"] = tuple(seeds)
    try:
        result = _guarded(discover_all, **kwargs)
    except ValueError as e:
        if isinstance(e, OperationError):
            raise
        raise OperationError("invalid_kind", str(e)) from e
    return result.to_dict()


def op_relate(construction: Construction, *, expr1: str, expr2: str,
              timeout_ms: Optional[int] = None) -> dict:
    e1 = bind_expression(construction, expr1)
    e2 = bind_expression(construction, expr2)
    try:
        result = _guarded(relate, construction=construction, e1=e1, e2=e2,
                          timeout_ms=resolve_timeout_ms(timeout_ms))
    except NoRelationError as e:
        raise OperationError("no_relation", str(e)) from e
    except SemanticError as e:
        raise OperationError("invalid_expression", str(e)) from e
    return result.to_dict()


def op_compare(construction: Construction, *, expr1: str, expr2: str,
               timeout_ms: Optional[int] = None) -> dict:
    e1 = bind_expression(construction, expr1)
    e2 = bind_expression(construction, expr2)
    try:
        result = _guarded(compare, construction=construction, e1=e1, e2=e2,
                          timeout_ms=resolve_timeout_ms(timeout_ms))
    except NoRelationError as e:
        raise OperationError("no_relation", str(e)) from e
    except SemanticError as e:
        raise OperationError("invalid_expression", str(e)) from e
    return result.to_dict()


def op_locus(construction: Construction, *, statement: str, tracer: str,
             timeout_ms: Optional[int] = None) -> dict:
    try:
        result = _guarded(locus_equation, construction=construction,
                          statement_label=statement, tracer=tracer,
                          timeout_ms=resolve_timeout_ms(timeout_ms))
    except TrivialLocusError as e:
        raise OperationError("trivial_locus", str(e)) from e
    except KeyError as e:
        raise OperationError("invalid_statement",
                             f"no statement labelled {e}") from e
    except ValueError as e:
        if isinstance(e, OperationError):
            raise
        raise OperationError("invalid_tracer", str(e)) from e
    return result.to_dict()


def op_envelope(construction: Construction, *, curve: str,
                timeout_ms: Optional[int] = None) -> dict:
    try:
        result = _guarded(envelope, construction=construction,
                          curve_object=curve,
                          timeout_ms=resolve_timeout_ms(timeout_ms))
    except NoEnvelopeError as e:
        raise OperationError("no_envelope", str(e)) from e
    except (KeyError, ValueError) as e:
        if isinstance(e, OperationError):
            raise
        raise OperationError("invalid_curve", str(e)) from e
    return result.to_dict()
