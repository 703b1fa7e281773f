"""Command-line front end tests.

`main(argv)` is called in-process; stdout must carry exactly one line of
canonical JSON, human diagnostics go to stderr, and exit codes follow the
contract: 0 = verdict computed (even FALSE), 1 = input error, 2 = resource
limit / UNKNOWN.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from mechgeo.service.cli import main

VARIGNON = """\
point A free
point B free
point C free
point D free
point P = midpoint(A, B)
point Q = midpoint(B, C)
point R = midpoint(C, D)
point S = midpoint(D, A)
statement pq_rs_parallel = parallel(seg(P, Q), seg(R, S))
statement not_a_rectangle = perpendicular(seg(P, Q), seg(Q, R))
"""

GEOMEAN = """\
point A = fixed(0, 0)
point B = fixed(1, 0)
point C free
line base = line(A, B)
point F = foot_of_perpendicular(C, base)
statement gm = geom_mean(seg(C, F), seg(A, F), seg(F, B))
"""

ICMI = """\
point A = fixed(0, 0)
point B = fixed(1, 0)
point C = fixed(1, 1)
point D = fixed(0, 1)
point E = divide_segment(A, B, 1, 3)
line diag = line(A, C)
line cev = line(D, E)
point X = intersect_lines(diag, cev)
"""

PEDAL = """\
point O = fixed(0, 0)
point U = fixed(1, 0)
point V = fixed(0, 1)
circle k = circle_center_point(O, U)
point P = point_on_circle(k)
line xaxis = line(O, U)
line yaxis = line(O, V)
point A = foot_of_perpendicular(P, xaxis)
point B = foot_of_perpendicular(P, yaxis)
line l = line(A, B)
"""

CORPUS_DIR = Path(__file__).parent / "corpus"


@pytest.fixture
def geo(tmp_path):
    def write(source: str, name: str = "figure.geo") -> str:
        path = tmp_path / name
        path.write_text(source, encoding="utf-8")
        return str(path)

    return write


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def payload(out: str) -> dict:
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert len(lines) == 1, f"stdout must be one JSON line, got: {out!r}"
    return json.loads(lines[0])


# ---------------------------------------------------------------------------
# prove
# ---------------------------------------------------------------------------


def test_prove_exit_zero_even_for_false(geo, capsys):
    code, out, err = run_cli(["prove", geo(VARIGNON)], capsys)
    assert code == 0
    doc = payload(out)
    assert doc["status"] == "ok"
    verdicts = {r["statement"]: r["verdict"] for r in doc["result"]["results"]}
    assert verdicts == {"pq_rs_parallel": "TRUE", "not_a_rectangle": "FALSE"}


def test_prove_single_statement_flag(geo, capsys):
    code, out, _ = run_cli(
        ["prove", geo(VARIGNON), "--statement", "pq_rs_parallel"], capsys)
    assert code == 0
    results = payload(out)["result"]["results"]
    assert [r["statement"] for r in results] == ["pq_rs_parallel"]


def test_prove_missing_file_is_input_error(capsys):
    code, out, err = run_cli(["prove", "/nonexistent/f.geo"], capsys)
    assert code == 1
    doc = payload(out)
    assert doc["status"] == "error"
    assert doc["error"]["type"] == "file_not_found"
    assert "mechgeo prove:" in err


def test_prove_parse_error_is_input_error(geo, capsys):
    code, out, err = run_cli(["prove", geo("point A fre\n")], capsys)
    assert code == 1
    doc = payload(out)
    assert doc["error"]["type"] == "parse_error"
    assert doc["error"]["line"] == 1


def test_prove_unknown_label_is_input_error(geo, capsys):
    code, out, _ = run_cli(
        ["prove", geo(VARIGNON), "--statement", "nope"], capsys)
    assert code == 1
    assert payload(out)["error"]["type"] == "invalid_statement"


def test_prove_exhausted_budget_exits_two(geo, capsys):
    clough = (CORPUS_DIR / "clough.geo").read_text()
    code, out, _ = run_cli(
        ["prove", geo(clough), "--timeout-ms", "1"], capsys)
    assert code == 2
    doc = payload(out)
    assert doc["status"] == "ok"  # verdicts were still rendered
    assert all(r["verdict"] == "UNKNOWN" for r in doc["result"]["results"])
    assert all(r["certificate"]["reason"] == "resource_limit"
               for r in doc["result"]["results"])


# ---------------------------------------------------------------------------
# discover / discover-all
# ---------------------------------------------------------------------------


def test_discover_target(geo, capsys):
    code, out, _ = run_cli(
        ["discover", geo(VARIGNON), "--target", "P"], capsys)
    assert code == 0
    result = payload(out)["result"]
    assert result["target"] == "P"
    assert result["facts"], "midline facts expected"


def test_discover_bad_target_is_input_error(geo, capsys):
    code, out, _ = run_cli(
        ["discover", geo(VARIGNON), "--target", "ZZ"], capsys)
    assert code == 1
    assert payload(out)["error"]["type"] == "invalid_target"


def test_discover_all_kind_filter(geo, capsys):
    code, out, _ = run_cli(
        ["discover-all", geo(VARIGNON), "--kind", "parallel"], capsys)
    assert code == 0
    facts = payload(out)["result"]["facts"]
    assert facts and all(f["predicate"].startswith("parallel(") for f in facts)


# ---------------------------------------------------------------------------
# relate / compare
# ---------------------------------------------------------------------------


def test_relate_certified_ratio(geo, capsys):
    code, out, _ = run_cli(
        ["relate", geo(ICMI),
         "--expr1", "dist(A, X)", "--expr2", "dist(A, C)"], capsys)
    assert code == 0
    result = payload(out)["result"]
    assert result["ratio"] == "1/4"
    assert result["certified"] is True


def test_relate_no_relation_is_input_error(geo, capsys):
    src = "point A free\npoint B free\npoint C free\n"
    code, out, _ = run_cli(
        ["relate", geo(src),
         "--expr1", "dist(A, B)", "--expr2", "dist(B, C)"], capsys)
    assert code == 1
    assert payload(out)["error"]["type"] == "no_relation"


def test_relate_resource_limit_exits_two(geo, capsys):
    code, out, _ = run_cli(
        ["relate", geo(ICMI), "--timeout-ms", "0",
         "--expr1", "dist(A, X)", "--expr2", "dist(A, C)"], capsys)
    assert code == 2
    assert payload(out)["error"]["type"] == "resource_limit"


def test_compare_certified_ratio(geo, capsys):
    code, out, _ = run_cli(
        ["compare", geo(VARIGNON),
         "--expr1", "dist(P, Q)", "--expr2", "dist(A, C)"], capsys)
    assert code == 0
    result = payload(out)["result"]
    assert result["certified"] is True
    assert abs(result["value"] - 0.5) < 1e-9


# ---------------------------------------------------------------------------
# locus / envelope
# ---------------------------------------------------------------------------


def test_locus_factors(geo, capsys):
    code, out, _ = run_cli(
        ["locus", geo(GEOMEAN), "--statement", "gm", "--tracer", "C"], capsys)
    assert code == 0
    result = payload(out)["result"]
    assert result["tracer"] == "C"
    assert len(result["factors"]) >= 2


def test_envelope_factors(geo, capsys):
    code, out, _ = run_cli(
        ["envelope", geo(PEDAL), "--curve", "l"], capsys)
    assert code == 0
    result = payload(out)["result"]
    assert result["family"] == "l"
    assert result["factors"]


def test_envelope_unknown_curve_is_input_error(geo, capsys):
    code, out, _ = run_cli(
        ["envelope", geo(PEDAL), "--curve", "zz"], capsys)
    assert code == 1
    assert payload(out)["error"]["type"] == "invalid_curve"


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def _copy_case(name: str, dest: Path) -> None:
    for suffix in (".geo", ".expected.json"):
        shutil.copy(CORPUS_DIR / f"{name}{suffix}", dest / f"{name}{suffix}")


def test_corpus_subset_passes(tmp_path, capsys):
    _copy_case("midsegment", tmp_path)
    _copy_case("varignon", tmp_path)
    code, out, err = run_cli(["corpus", str(tmp_path)], capsys)
    assert code == 0
    doc = payload(out)
    assert doc["result"]["total"] == 2
    assert doc["result"]["all_ok"] is True
    assert "corpus: 2/2 passed" in err
    assert "ok   midsegment.geo" in err or "ok  midsegment.geo" in err


def test_corpus_expectation_mismatch_fails(tmp_path, capsys):
    _copy_case("midsegment", tmp_path)
    sidecar = tmp_path / "midsegment.expected.json"
    doc = json.loads(sidecar.read_text())
    first = next(iter(doc["verdicts"]))
    doc["verdicts"][first] = "FALSE" if doc["verdicts"][first] == "TRUE" else "TRUE"
    sidecar.write_text(json.dumps(doc))
    code, out, err = run_cli(["corpus", str(tmp_path)], capsys)
    assert code == 1
    assert payload(out)["result"]["all_ok"] is False
    assert "FAIL" in err


def test_corpus_missing_sidecar_is_input_error(tmp_path, capsys):
    (tmp_path / "orphan.geo").write_text("point A free\n")
    code, out, _ = run_cli(["corpus", str(tmp_path)], capsys)
    assert code == 1
    assert payload(out)["error"]["type"] == "bad_corpus"


# ---------------------------------------------------------------------------
# interface plumbing
# ---------------------------------------------------------------------------


def test_stdout_carries_json_stderr_carries_diagnostics(geo, capsys):
    code, out, err = run_cli(["prove", "/missing.geo"], capsys)
    assert code == 1
    json.loads(out)  # stdout is machine-readable
    assert "mechgeo" in err and "{" not in err  # stderr is prose


def test_console_script_help():
    proc = subprocess.run(["mechgeo", "--help"], capture_output=True,
                          text=True, timeout=60)
    assert proc.returncode == 0
    for name in ("prove", "discover", "relate", "locus", "envelope",
                 "corpus", "serve"):
        assert name in proc.stdout


def test_module_invocation_matches_entry_point(geo, tmp_path):
    path = tmp_path / "figure.geo"
    path.write_text(VARIGNON, encoding="utf-8")
    proc = subprocess.run(
        [sys.executable, "-m", "mechgeo.service.cli", "prove", str(path)],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    verdicts = {r["statement"]: r["verdict"] for r in doc["result"]["results"]}
    assert verdicts == {"pq_rs_parallel": "TRUE", "not_a_rectangle": "FALSE"}
