"""Service layer: shared operation entry points, HTTP app, CLI, corpus."""
from .corpus import corpus_cases, evaluate_case, run_corpus
from .jobs import Job, JobStore
from .ops import (op_compare, op_discover, op_discover_all, op_envelope,
                  op_instance, op_locus, op_prove, op_relate, parse_source)
from .registry import Session, SessionRegistry
from .wire import (DEFAULT_TIMEOUT_MS, TIMEOUT_ENV_VAR, OperationError,
                   canonical_json, error_envelope, ok_envelope,
                   resolve_timeout_ms, strip_timing)

__all__ = [
    "op_prove", "op_discover", "op_discover_all", "op_relate", "op_compare",
    "op_locus", "op_envelope", "op_instance", "parse_source",
    "Session", "SessionRegistry", "Job", "JobStore",
    "corpus_cases", "evaluate_case", "run_corpus",
    "OperationError", "canonical_json", "strip_timing",
    "ok_envelope", "error_envelope",
    "resolve_timeout_ms", "DEFAULT_TIMEOUT_MS", "TIMEOUT_ENV_VAR",
]


def create_app(**kwargs):
    """HTTP application factory (imported lazily: FastAPI is only needed
    when the service is actually used)."""
    from .app import create_app as _create
    return _create(**kwargs)
