"""In-memory session registry: construction text + parsed model per id.

Session ids are 128-bit random tokens (unguessable).  The registry is the
only shared mutable state in the service and is safe under concurrent
insert/read/delete.  Computation ids count per session, so two sessions
created from identical sources see identical id sequences — this is what
makes reasoning responses byte-reproducible.
"""
from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass, field
from typing import Optional

from ..construction import Construction, Instance
from .ops import parse_source
from .wire import OperationError


@dataclass
class Session:
    id: str
    source: str
    construction: Construction
    last_instance: Optional[Instance] = None
    computations: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def next_computation_id(self) -> int:
        with self.lock:
            self.computations += 1
            return self.computations


class SessionRegistry:
    def __init__(self, capacity: int = 256):
        self.capacity = capacity
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def create(self, source: str) -> Session:
        construction = parse_source(source)
        session = Session(id=secrets.token_hex(16), source=source,
                          construction=construction)
        with self._lock:
            if len(self._sessions) >= self.capacity:
                raise OperationError(
                    "registry_full",
                    f"registry holds {self.capacity} constructions; "
                    "delete one first", http_status=503, exit_code=2)
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise OperationError("unknown_session",
                                 f"no construction with id '{session_id}'",
                                 http_status=404)
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise OperationError(
                    "unknown_session",
                    f"no construction with id '{session_id}'",
                    http_status=404)
            del self._sessions[session_id]

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)
