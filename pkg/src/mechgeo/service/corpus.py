"""Regression-corpus runner: .geo files with .expected.json sidecars.

A sidecar freezes the expected verdict per statement label and, optionally,
expected certified measure relations:

    {
      "verdicts": {"main": "TRUE", "wrong": "FALSE"},
      "relate": [{"expr1": "dist(A, X1)", "expr2": "dist(A, C)",
                  "ratio": "1/4", "certified": true}]
    }

The corpus is the regression suite: a run passes only when every
expectation in every sidecar is met.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .ops import op_prove, op_relate, parse_source
from .wire import OperationError


def corpus_cases(directory: Path) -> list[tuple[Path, Path]]:
    """(geo file, sidecar) pairs, sorted by name; missing sidecars error."""
    directory = Path(directory)
    if not directory.is_dir():
        raise OperationError("bad_corpus",
                             f"'{directory}' is not a directory")
    pairs = []
    for geo in sorted(directory.glob("*.geo")):
        sidecar = geo.with_suffix(".expected.json")
        if not sidecar.exists():
            raise OperationError(
                "bad_corpus", f"missing sidecar {sidecar.name} for {geo.name}")
        pairs.append((geo, sidecar))
    if not pairs:
        raise OperationError("bad_corpus",
                             f"no .geo files found in '{directory}'")
    return pairs


def evaluate_case(source: str, expected: dict,
                  *, timeout_ms: Optional[int] = None) -> dict:
    """Run one corpus case locally; returns verdicts, mismatches, ok flag."""
    construction = parse_source(source)
    mismatches: list[str] = []

    proved = op_prove(construction, timeout_ms=timeout_ms)["results"]
    verdicts = {r["statement"]: r["verdict"] for r in proved}
    for label, want in expected.get("verdicts", {}).items():
        got = verdicts.get(label)
        if got != want:
            mismatches.append(f"statement '{label}': expected {want}, "
                              f"got {got}")

    relations = []
    for entry in expected.get("relate", []):
        got = op_relate(construction, expr1=entry["expr1"],
                        expr2=entry["expr2"], timeout_ms=timeout_ms)
        relations.append(got)
        want_ratio = entry.get("ratio")
        if want_ratio is not None and got.get("ratio") != want_ratio:
            mismatches.append(
                f"relate({entry['expr1']}, {entry['expr2']}): expected "
                f"ratio {want_ratio}, got {got.get('ratio')}")
        if got.get("certified") is not entry.get("certified", True):
            mismatches.append(
                f"relate({entry['expr1']}, {entry['expr2']}): certification "
                f"flag is {got.get('certified')}")

    return {"verdicts": verdicts, "relations": relations,
            "mismatches": mismatches, "ok": not mismatches}


def run_corpus(directory: Path, *, timeout_ms: Optional[int] = None) -> dict:
    cases = []
    aborted = False
    for geo, sidecar in corpus_cases(directory):
        expected = json.loads(sidecar.read_text())
        try:
            outcome = evaluate_case(geo.read_text(), expected,
                                    timeout_ms=timeout_ms)
        except OperationError as e:
            aborted = aborted or e.exit_code == 2
            outcome = {"verdicts": {}, "relations": [], "ok": False,
                       "mismatches": [f"{e.err_type}: {e.message}"]}
        outcome["file"] = geo.name
        cases.append(outcome)
    passed = sum(1 for c in cases if c["ok"])
    return {"total": len(cases), "passed": passed,
            "failed": len(cases) - passed, "all_ok": passed == len(cases),
            "aborted": aborted, "cases": cases}
