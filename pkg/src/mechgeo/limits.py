"""Resource limits for basis computations.

Gröbner runs can blow up; every kernel entry point takes an optional
ResourceLimits and raises ResourceLimitError instead of crashing or hanging.
Callers higher up translate that into an UNKNOWN verdict.
"""
from __future__ import annotations

import time
from dataclasses import dataclass


@dataclass(frozen=True)
class ResourceLimits:
    max_pair_reductions: int = 200_000
    max_arena_bytes: int = 512 * 2**20
    max_wall_ms: int = 60_000

    def with_wall_ms(self, ms: int) -> "ResourceLimits":
        return ResourceLimits(self.max_pair_reductions, self.max_arena_bytes, ms)


DEFAULT_LIMITS = ResourceLimits()


class ResourceLimitError(Exception):
    """A configured cap was hit. Carries partial progress for diagnostics."""

    def __init__(self, resource: str, message: str, progress: dict | None = None):
        super().__init__(message)
        self.resource = resource
        self.progress = progress or {}


class _Meter:
    """Per-call usage meter shared by the kernel loops."""

    def __init__(self, limits: ResourceLimits | None):
        self.limits = limits or DEFAULT_LIMITS
        self.reductions = 0
        self.started = time.monotonic()

    def tick_reduction(self, progress=None):
        self.reductions += 1
        if self.reductions > self.limits.max_pair_reductions:
            raise ResourceLimitError(
                "pair_reductions",
                "pair reduction cap %d exceeded" % self.limits.max_pair_reductions,
                self._progress(progress),
            )
        if self.reductions % 64 == 0:
            self.check_wall(progress)

    def check_wall(self, progress=None):
        elapsed_ms = (time.monotonic() - self.started) * 1000.0
        if elapsed_ms > self.limits.max_wall_ms:
            raise ResourceLimitError(
                "wall_clock",
                "wall clock cap %d ms exceeded" % self.limits.max_wall_ms,
                self._progress(progress),
            )

    def check_arena(self, nbytes: int, progress=None):
        if nbytes > self.limits.max_arena_bytes:
            raise ResourceLimitError(
                "arena",
                "arena estimate %d bytes exceeds cap %d" % (nbytes, self.limits.max_arena_bytes),
                self._progress(progress),
            )

    def _progress(self, extra):
        d = {
            "reductions": self.reductions,
            "elapsed_ms": round((time.monotonic() - self.started) * 1000.0, 1),
        }
        if extra:
            d.update(extra)
        return d
