import json
import os
import subprocess
import sys

import pytest

from toughham.cli import RunRecord, main, build_parser
from toughham.graph import Graph, write_graph
from conftest import cycle_graph, complete_graph, path_graph


def run_cli(*args, **kw):
    return subprocess.run([sys.executable, "-m", "toughham.cli", *args],
                          capture_output=True, text=True, **kw)


@pytest.fixture
def graph_file(tmp_path):
    def write(name, g):
        p = tmp_path / name
        p.write_text(write_graph(g))
        return str(p)
    return write


def test_invariants_c6(graph_file):
    r = run_cli("invariants", graph_file("c6.graph", cycle_graph(6)))
    assert r.returncode == 0
    assert "toughness = 1/1" in r.stdout
    assert "alpha = 3" in r.stdout
    assert "2K2-free = False" in r.stdout


def test_invariants_k4(graph_file):
    r = run_cli("invariants", graph_file("k4.graph", complete_graph(4)))
    assert "toughness = inf" in r.stdout
    assert "alpha = 1" in r.stdout
    assert "2K2-free = True" in r.stdout


def test_invariants_empty_graph(graph_file):
    r = run_cli("invariants", graph_file("e3.graph", Graph(3, (0, 0, 0))))
    assert "toughness = 0/1" in r.stdout
    assert "2-factor = none" in r.stdout


def test_prove_exit_codes(graph_file, tmp_path):
    assert run_cli("prove", graph_file("c5.graph", cycle_graph(5))).returncode == 0
    r = run_cli("prove", graph_file("c6.graph", cycle_graph(6)))
    assert r.returncode == 2
    assert "0, 1, 3, 4" in r.stderr
    r = run_cli("prove", graph_file("star.graph", path_graph(2)))
    assert r.returncode == 2


def test_prove_no_two_factor_exit_1(graph_file):
    star = Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
    r = run_cli("prove", graph_file("s.graph", star))
    assert r.returncode == 1
    rec = RunRecord.from_json(r.stdout)
    assert rec.outcome == "no_two_factor"
    assert rec.witness["tag"] == "toughness_witness"


def test_prove_trace_file(graph_file, tmp_path):
    out = tmp_path / "trace.jsonl"
    g = complete_graph(6)
    r = run_cli("prove", graph_file("k6.graph", g), "--trace", str(out))
    assert r.returncode == 0
    for line in out.read_text().splitlines():
        step = json.loads(line)
        assert "rule" in step and "omega_before" in step


def test_parse_error_reports_line(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("4 2\n0 1\nnope\n")
    r = run_cli("invariants", str(p))
    assert r.returncode == 2
    assert "parse error" in r.stderr


def test_runrecord_roundtrip():
    rec = RunRecord(graph_id="n5-1f", n=5, m=5, toughness="5/4",
                    is_2k2_free=True, outcome="hamiltonian",
                    omega_trajectory=[2, 1], wall_time=0.25, seed=11)
    assert RunRecord.from_json(rec.to_json()) == rec


def test_search_exhaustive_small():
    r = run_cli("search", "--n-min", "5", "--n-max", "5", "--exhaustive")
    assert r.returncode == 0
    rep = json.loads(r.stdout.splitlines()[0])
    assert rep["enumerated"] == 834
    assert rep["in_band"] == 25 and rep["hamiltonian"] == 25
    assert rep["non_hamiltonian"] == []


def test_search_empty_range():
    r = run_cli("search", "--n-min", "7", "--n-max", "6", "--exhaustive")
    assert r.returncode == 0


def test_search_sampled_deterministic():
    args = ("search", "--n-min", "6", "--n-max", "8", "--count", "8",
            "--seed", "31")
    a = run_cli(*args)
    b = run_cli(*args)
    assert a.returncode == 0

    def strip(out):
        recs = []
        for line in out.splitlines():
            d = json.loads(line)
            d.pop("wall_time", None)
            recs.append(d)
        return recs

    assert strip(a.stdout) == strip(b.stdout)
    sampled = [d for d in strip(a.stdout) if "outcome" in d]
    assert len(sampled) == 8
    assert all(d["outcome"] == "hamiltonian" for d in sampled)


def test_search_threshold_two_variant():
    r = run_cli("search", "--n-min", "6", "--n-max", "6", "--exhaustive",
                "--tough", "2/1")
    rep = json.loads(r.stdout.splitlines()[0])
    assert rep["non_hamiltonian"] == []
    assert rep["in_band"] == rep["hamiltonian"] > 0


def test_suite_unknown():
    assert run_cli("suite", "nonsense").returncode == 2


def test_suite_lemmas_passes():
    r = run_cli("suite", "lemmas")
    assert r.returncode == 0
    assert "FAIL" not in r.stdout


def test_size_limit_env(graph_file):
    path = graph_file("c8.graph", cycle_graph(8))
    env = {**os.environ, "TOUGHHAM_SIZE_LIMIT": "4"}
    r = subprocess.run([sys.executable, "-m", "toughham.cli",
                        "invariants", path],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 2
    assert "size limit" in r.stderr
