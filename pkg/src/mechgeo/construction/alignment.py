"""Structural incidence: which points provably lie on which straight carriers.

A distance between two points that share a carrier (a constructed line or
segment) is measured as a signed projection along that carrier's direction;
distances between unrelated points stay unsigned. Both the numeric layer and
the polynomial encoding use this same resolution so their sign conventions
agree everywhere.
"""
from __future__ import annotations

from .model import Construction

# step kinds that create a straight carrier, with how to get its direction
CARRIER_KINDS = {"line", "segment", "perpendicular_line", "parallel_line"}


def carrier_points(construction: Construction) -> dict[str, list[str]]:
    """carrier id -> points structurally incident to it (construction order),
    closed under midpoint/divide_segment of incident point pairs."""
    on: dict[str, list[str]] = {}

    def add(cid: str, pid: str) -> None:
        if pid not in on[cid]:
            on[cid].append(pid)

    for step in construction.steps:
        if step.kind in ("line", "segment"):
            on[step.id] = [step.args[0], step.args[1]]
        elif step.kind in ("perpendicular_line", "parallel_line"):
            on[step.id] = [step.args[0]]

    changed = True
    while changed:
        snapshot = {cid: len(pts) for cid, pts in on.items()}
        for step in construction.steps:
            if step.kind == "point_on_line":
                add(step.args[0], step.id)
            elif step.kind == "foot_of_perpendicular":
                add(step.args[1], step.id)
            elif step.kind == "intersect_line_circle":
                add(step.args[0], step.id)
            elif step.kind == "intersect_lines":
                for lid in step.args:
                    add(lid, step.id)
            elif step.kind in ("midpoint", "divide_segment"):
                a, b = step.args[0], step.args[1]
                for cid in list(on):
                    if a in on[cid] and b in on[cid]:
                        add(cid, step.id)
        changed = snapshot != {cid: len(pts) for cid, pts in on.items()}
    return on


def alignment_map(construction: Construction) -> dict[frozenset, str]:
    """Unordered point pair -> id of the first-constructed shared carrier."""
    on = carrier_points(construction)
    out: dict[frozenset, str] = {}
    for step in construction.steps:           # construction order
        if step.id not in on:
            continue
        pts = on[step.id]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                key = frozenset((pts[i], pts[j]))
                out.setdefault(key, step.id)
    return out
