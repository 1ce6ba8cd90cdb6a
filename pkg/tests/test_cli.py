import json
import subprocess
import sys

import pytest

from fewham.cli import main
from fewham.formats import write_graph6, write_multigraph_json
from fewham.graphcore import MultiGraph, complete_graph

TOP_KEYS = {"version", "command", "input_sha", "graph", "results", "stats"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_count_k4(capsys):
    code, rep, _ = run(capsys, "count", "--family", "k4")
    assert code == 0
    assert set(rep) == TOP_KEYS
    assert rep["results"]["ham_count"] == 3
    assert rep["graph"] == {"n": 4, "edges": 6, "regular": 3}
    assert set(rep["results"]) >= {"ham_count", "vertex_connectivity", "edge_connectivity", "checks"}


def test_count_file_and_through_edge(tmp_path, capsys):
    f = tmp_path / "k5.g6"
    f.write_bytes(write_graph6(complete_graph(5)))
    code, rep, _ = run(capsys, "count", str(f), "--through-edge", "0,1", "--connectivity")
    assert code == 0
    assert rep["results"]["ham_count"] == 6
    assert rep["results"]["vertex_connectivity"] == rep["results"]["edge_connectivity"] == 4


def test_count_multigraph_json_enumerate(tmp_path, capsys):
    f = tmp_path / "g.json"
    f.write_text(write_multigraph_json(MultiGraph(3, {(0, 1): 2, (1, 2): 1, (0, 2): 1})))
    code, rep, _ = run(capsys, "count", str(f), "--enumerate")
    assert code == 0 and rep["results"]["ham_count"] == 2
    assert rep["results"]["cycles"] == [[0, 1, 2], [0, 1, 2]]


def test_bad_graph6_is_input_error(tmp_path, capsys):
    f = tmp_path / "bad.g6"
    f.write_bytes(b"C}!")
    code, rep, _ = run(capsys, "count", str(f))
    assert code == 3 and "error" in rep


def test_missing_input(capsys):
    code, rep, _ = run(capsys, "count")
    assert code == 3


def test_budget_exhausted(capsys):
    code, rep, _ = run(capsys, "count", "--family", "meredith", "--budget", "1000")
    assert code == 4
    assert rep["results"]["checks"]["exact"]["pass"] is False


def test_frontier_method(capsys):
    code, rep, _ = run(capsys, "count", "--family", "meredith", "--method", "frontier")
    assert code == 0 and rep["results"]["ham_count"] == 0


def test_generate_fig1_needs_transcription(capsys):
    code, rep, _ = run(capsys, "generate", "fig1")
    assert code == 3 and "figure transcription required" in rep["error"]


def test_generate_writes_file(tmp_path, capsys):
    out = tmp_path / "hg.json"
    code, rep, _ = run(capsys, "generate", "hg", "--ell", "3", "--out", str(out))
    assert code == 0 and out.exists()
    assert rep["graph"]["n"] == 34 and rep["graph"]["regular"] == 4
    code, rep, _ = run(capsys, "count", str(out), "--method", "frontier")
    assert rep["results"]["ham_count"] == 5184


def test_verify_shipped_gadget(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, rep, out = run(capsys, "verify", "gadget", "--report", str(report))
    assert code == 0
    assert rep["results"]["edge_connectivity"] == 4 and rep["results"]["ham_count"] == 0
    assert all(c["pass"] for c in rep["results"]["checks"].values())
    assert report.read_text() == out


def test_verify_default_space_fails(capsys):
    code, rep, _ = run(capsys, "verify", "gadget", "--search", "doubled-matching")
    assert code == 2
    assert rep["results"]["checks"]["search"]["witness"]["rejections"] == {"iii-a": 720}


def test_verify_family_needs_two_ells(capsys):
    code, _rep, _ = run(capsys, "verify", "family", "--ell-set", "2")
    assert code == 3


def test_verify_gadget_file(tmp_path, capsys, gadget):
    f = tmp_path / "g.json"
    f.write_text(json.dumps(gadget.to_dict()))
    code, rep, _ = run(capsys, "verify", str(f))
    assert code == 0
    f.write_text("{}")
    assert run(capsys, "verify", str(f))[0] == 3


@pytest.mark.parametrize("workers", ["1", "2"])
def test_reports_stable_without_timing(capsys, workers):
    base = run(capsys, "count", "--family", "hg", "--no-timing")[2]
    again = run(capsys, "count", "--family", "hg", "--no-timing", "--workers", workers)[2]
    assert base == again


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fewham", "count", "--family", "petersen", "--no-timing"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["ham_count"] == 0
