"""A wall-clock budget shared across the kernel calls of one operation."""
from __future__ import annotations

import time

from ..limits import DEFAULT_LIMITS, ResourceLimitError, ResourceLimits

DEFAULT_TIMEOUT_MS = 60_000


class Budget:
    """Deadline for a whole prove/relate/discover operation. Each kernel call
    receives the remaining wall time, so one slow basis cannot overrun the
    operation's total allowance."""

    def __init__(self, timeout_ms: int | None = None,
                 base: ResourceLimits = DEFAULT_LIMITS):
        self.timeout_ms = (DEFAULT_TIMEOUT_MS if timeout_ms is None
                           else int(timeout_ms))
        self.base = base
        self.started = time.monotonic()

    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.started) * 1000.0

    def remaining_ms(self) -> float:
        return self.timeout_ms - self.elapsed_ms()

    def limits(self) -> ResourceLimits:
        remaining = self.remaining_ms()
        if remaining <= 0:
            raise ResourceLimitError(
                "wall_clock",
                "operation budget %d ms exhausted" % self.timeout_ms,
                {"elapsed_ms": round(self.elapsed_ms(), 1)})
        return self.base.with_wall_ms(max(1, int(remaining)))
