"""Stable JSON wire format shared by the CLI and the HTTP service.

Every payload is serialized canonically (sorted keys, compact separators) so
that identical computations produce byte-identical bodies; the only fields
that may differ between repeated runs are the timing fields, which
`strip_timing` removes for comparisons.
"""
from __future__ import annotations

import json
import os
from typing import Any, Optional

DEFAULT_TIMEOUT_MS = 60_000
TIMEOUT_ENV_VAR = "MG_TIMEOUT_MS"

TIMING_FIELDS = frozenset({"elapsed_ms"})


def resolve_timeout_ms(explicit: Optional[int] = None) -> int:
    """Per-call timeout: explicit value, else the environment override,
    else the default."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(TIMEOUT_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError:
            raise OperationError(
                "bad_environment",
                f"{TIMEOUT_ENV_VAR} must be an integer, got {env!r}")
    return DEFAULT_TIMEOUT_MS


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False)


def strip_timing(obj: Any) -> Any:
    """Recursively drop timing fields; used for determinism comparisons."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items()
                if k not in TIMING_FIELDS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


class OperationError(Exception):
    """A typed operation failure carrying both its HTTP status and its CLI
    exit code, so both front ends fail identically."""

    def __init__(self, err_type: str, message: str, *,
                 http_status: int = 422, exit_code: int = 1, **extra):
        super().__init__(message)
        self.err_type = err_type
        self.message = message
        self.http_status = http_status
        self.exit_code = exit_code
        self.extra = extra

    def payload(self) -> dict:
        out = {"type": self.err_type, "message": self.message}
        out.update(self.extra)
        return out


def ok_envelope(computation_id: int, echo: dict, result: dict) -> dict:
    return {"status": "ok", "computation_id": computation_id,
            "echo": echo, "result": result}


def error_envelope(computation_id: int, echo: dict, error: dict) -> dict:
    return {"status": "error", "computation_id": computation_id,
            "echo": echo, "error": error}
