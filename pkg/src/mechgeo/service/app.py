"""HTTP service: construction registry plus reasoning endpoints.

Routes
------
POST   /constructions                 DSL text (or JSON {"source": ...}) →
                                      201 with session id and parsed steps
GET    /constructions/{id}/instance   ?seed=K&pin=ID:x:y → coordinates
POST   /constructions/{id}/prove      {"statement"?, "wlog"?, "timeout_ms"?}
POST   /constructions/{id}/discover   {"target", "seeds"?, "timeout_ms"?}
POST   /constructions/{id}/discover-all {"kind", ...}
POST   /constructions/{id}/relate     {"expr1", "expr2", "timeout_ms"?}
POST   /constructions/{id}/compare    {"expr1", "expr2", "timeout_ms"?}
POST   /constructions/{id}/locus      {"statement", "tracer", "timeout_ms"?}
POST   /constructions/{id}/envelope   {"curve", "timeout_ms"?}
DELETE /constructions/{id}
GET    /jobs/{id}                     poll a deferred computation

Every response body is canonical JSON carrying the request echo and a
per-session monotone computation id.  Reasoning calls that outlast the
synchronous window return 202 with a poll URL; the polled result is the
exact payload the synchronous path would have produced.
"""
from __future__ import annotations

import json
from typing import Optional

from fastapi import FastAPI, Request, Response

from .jobs import Job, JobStore
from .ops import (op_compare, op_discover, op_discover_all, op_envelope,
                  op_instance, op_locus, op_prove, op_relate)
from .registry import SessionRegistry
from .wire import (OperationError, canonical_json, error_envelope,
                   ok_envelope)

_REASONING_OPS = {
    "prove": op_prove,
    "discover": op_discover,
    "discover-all": op_discover_all,
    "relate": op_relate,
    "compare": op_compare,
    "locus": op_locus,
    "envelope": op_envelope,
}


def _respond(status: int, payload: dict) -> Response:
    return Response(content=canonical_json(payload), status_code=status,
                    media_type="application/json")


def _parse_pins(pin_params: list[str]) -> dict:
    pins: dict[str, tuple] = {}
    for raw in pin_params:
        parts = raw.split(":")
        if len(parts) < 3:
            raise OperationError(
                "invalid_pin", f"pin must look like ID:x:y, got {raw!r}")
        pins[parts[0]] = tuple(parts[1:])
    return pins


def create_app(*, registry: Optional[SessionRegistry] = None,
               jobs: Optional[JobStore] = None) -> FastAPI:
    app = FastAPI(title="mechanical geometer", docs_url=None, redoc_url=None)
    # `is None` rather than `or`: an injected empty registry is falsy.
    app.state.registry = SessionRegistry() if registry is None else registry
    app.state.jobs = JobStore() if jobs is None else jobs

    registry_ = app.state.registry
    jobs_ = app.state.jobs

    @app.post("/constructions")
    async def create_construction(request: Request) -> Response:
        body = await request.body()
        content_type = request.headers.get("content-type", "")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            return _respond(400, error_envelope(
                0, {}, {"type": "parse_error",
                        "message": "body is not valid UTF-8"}))
        if "json" in content_type:
            try:
                decoded = json.loads(text or "{}")
                text = decoded["source"]
            except (json.JSONDecodeError, KeyError, TypeError):
                return _respond(400, error_envelope(
                    0, {}, {"type": "parse_error",
                            "message": 'JSON body must be {"source": "..."}'}))
        echo = {"op": "create", "source": text}
        try:
            session = registry_.create(text)
        except OperationError as e:
            return _respond(e.http_status, error_envelope(0, echo, e.payload()))
        construction = session.construction
        result = {
            "id": session.id,
            "dimension": construction.dimension,
            "steps": [{"id": s.id, "kind": s.kind,
                       "object": construction.objects[s.id],
                       "text": s.text()} for s in construction.steps],
            "statements": [{"label": s.label, "predicate": s.predicate.text()}
                           for s in construction.statements],
        }
        return _respond(201, ok_envelope(0, echo, result))

    @app.get("/constructions/{session_id}/instance")
    async def get_instance(session_id: str, request: Request) -> Response:
        params = request.query_params
        echo = {"op": "instance", "seed": params.get("seed", "0"),
                "pin": list(params.getlist("pin"))}
        try:
            session = registry_.get(session_id)
        except OperationError as e:
            return _respond(e.http_status, error_envelope(0, echo, e.payload()))
        cid = session.next_computation_id()
        try:
            try:
                seed = int(params.get("seed", "0"))
            except ValueError:
                raise OperationError("invalid_seed",
                                     f"seed must be an integer, got "
                                     f"{params.get('seed')!r}")
            pins = _parse_pins(list(params.getlist("pin")))
            result = op_instance(session.construction, seed=seed, pins=pins)
        except OperationError as e:
            return _respond(e.http_status, error_envelope(cid, echo, e.payload()))
        return _respond(200, ok_envelope(cid, echo, result))

    @app.post("/constructions/{session_id}/{op_name}")
    async def run_reasoning(session_id: str, op_name: str,
                            request: Request) -> Response:
        if op_name not in _REASONING_OPS:
            return _respond(404, error_envelope(
                0, {"op": op_name},
                {"type": "unknown_operation",
                 "message": f"no operation '{op_name}'"}))
        body = await request.body()
        try:
            params = json.loads(body.decode("utf-8")) if body.strip() else {}
            if not isinstance(params, dict):
                raise ValueError("body must be a JSON object")
        except (ValueError, UnicodeDecodeError) as e:
            return _respond(400, error_envelope(
                0, {"op": op_name},
                {"type": "bad_request", "message": f"invalid JSON body: {e}"}))
        echo = {"op": op_name, **params}
        try:
            session = registry_.get(session_id)
        except OperationError as e:
            return _respond(e.http_status, error_envelope(0, echo, e.payload()))
        cid = session.next_computation_id()
        op = _REASONING_OPS[op_name]

        def run() -> tuple[int, str]:
            try:
                result = op(session.construction, **params)
            except OperationError as e:
                return e.http_status, canonical_json(
                    error_envelope(cid, echo, e.payload()))
            except TypeError as e:
                bad = OperationError("bad_request", str(e))
                return bad.http_status, canonical_json(
                    error_envelope(cid, echo, bad.payload()))
            return 200, canonical_json(ok_envelope(cid, echo, result))

        outcome = jobs_.submit(run)
        if isinstance(outcome, Job):
            return _respond(202, {
                "status": "accepted", "computation_id": cid, "echo": echo,
                "job": outcome.id, "poll": f"/jobs/{outcome.id}"})
        status, payload = outcome
        return Response(content=payload, status_code=status,
                        media_type="application/json")

    @app.delete("/constructions/{session_id}")
    async def delete_construction(session_id: str) -> Response:
        echo = {"op": "delete"}
        try:
            registry_.delete(session_id)
        except OperationError as e:
            return _respond(e.http_status, error_envelope(0, echo, e.payload()))
        return _respond(200, ok_envelope(0, echo, {"deleted": True}))

    @app.get("/jobs/{job_id}")
    async def poll_job(job_id: str) -> Response:
        job = jobs_.get(job_id)
        echo = {"op": "poll", "job": job_id}
        if job is None:
            return _respond(404, error_envelope(
                0, echo, {"type": "unknown_job",
                          "message": f"no job with id '{job_id}'"}))
        if not job.done:
            return _respond(202, {"status": "running", "echo": echo,
                                  "job": job_id, "poll": f"/jobs/{job_id}"})
        status, payload = job.outcome
        return Response(content=payload, status_code=status,
                        media_type="application/json")

    return app
