"""Synchronous-window job runner with a polling protocol.

A computation is submitted to a worker pool; if it finishes within the
synchronous window the caller gets the finished response directly, otherwise
a job ticket is returned and the finished response — the exact bytes the
synchronous path would have produced — becomes available at the poll URL.
A job never reports both an error and a result.
"""
from __future__ import annotations

import secrets
import threading
from concurrent.futures import Future, ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeoutError
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .wire import canonical_json, error_envelope

SYNC_WINDOW_S = 2.0

# a finished HTTP exchange: status code + canonical JSON body
Outcome = tuple[int, str]


@dataclass
class Job:
    id: str
    outcome: Optional[Outcome] = None   # None while running

    @property
    def done(self) -> bool:
        return self.outcome is not None


def _run_safe(fn: Callable[[], Outcome]) -> Outcome:
    try:
        return fn()
    except Exception as exc:  # handlers catch typed errors; this is a net
        body = error_envelope(0, {}, {"type": "internal_error",
                                      "message": str(exc)})
        return 500, canonical_json(body)


class JobStore:
    def __init__(self, max_workers: int = 8,
                 sync_window_s: float = SYNC_WINDOW_S):
        self.sync_window_s = sync_window_s
        self._executor = ThreadPoolExecutor(max_workers=max_workers)
        self._lock = threading.Lock()
        self._jobs: dict[str, Job] = {}

    def submit(self, fn: Callable[[], Outcome]) -> Union[Outcome, Job]:
        """Run `fn`; return its outcome if it beats the sync window, else a
        Job whose outcome fills in when the computation completes."""
        future: Future = self._executor.submit(_run_safe, fn)
        try:
            return future.result(timeout=self.sync_window_s)
        except FutureTimeoutError:
            pass
        job = Job(id=secrets.token_hex(16))
        with self._lock:
            self._jobs[job.id] = job

        def finish(fut: Future) -> None:
            with self._lock:
                job.outcome = fut.result()   # _run_safe never raises
        future.add_done_callback(finish)
        return job

    def get(self, job_id: str) -> Optional[Job]:
        with self._lock:
            return self._jobs.get(job_id)

    def shutdown(self) -> None:
        self._executor.shutdown(wait=False, cancel_futures=True)
