import io
import json
import sys

import pytest

from maxleaf.cli import main
from maxleaf.generators import g7, q3
from maxleaf.graphs import parse_graph, write_graph
from maxleaf.solver import tree_leaf_count, verify_spanning_tree


def run(capsys, *argv, stdin: str | None = None):
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
        try:
            code = main(list(argv))
        finally:
            sys.stdin = old
    else:
        code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def q3_file(tmp_path):
    p = tmp_path / "q3.gr"
    p.write_text(write_graph(q3()))
    return str(p)


@pytest.fixture
def g7_minus_file(tmp_path):
    g = g7()
    g.remove_edge(2, 5)
    p = tmp_path / "g7m.gr"
    p.write_text(write_graph(g))
    return str(p)


def test_solve_yes_and_no(capsys, q3_file):
    code, out, _ = run(capsys, "solve", "-k", "4", q3_file)
    assert code == 0 and out.strip() == "YES"
    code, out, _ = run(capsys, "solve", "-k", "5", q3_file)
    assert code == 1 and out.strip() == "NO"


def test_solve_json_stats_witness(capsys, q3_file):
    code, out, _ = run(capsys, "solve", "-k", "4", q3_file, "--json", "--stats", "--witness")
    assert code == 0
    doc = json.loads(out)
    assert doc["answer"] == "YES"
    assert "subsets_enumerated" in doc["stats"]
    tree = [tuple(e) for e in doc["witness"]]
    assert verify_spanning_tree(q3(), tree) and tree_leaf_count(tree) >= 4


def test_solve_witness_reparses_as_graph(capsys, q3_file):
    code, out, _ = run(capsys, "solve", "-k", "4", q3_file, "--witness")
    assert code == 0
    lines = out.strip().splitlines()
    tree_text = "\n".join(lines[1:]) + "\n"
    t = parse_graph(tree_text)
    assert t.n == 8 and t.m == 7


def test_solve_reads_stdin(capsys):
    code, out, _ = run(capsys, "solve", "-k", "2", "-", stdin=write_graph(q3()))
    assert code == 0


def test_detect_json_on_g7_minus(capsys, g7_minus_file):
    code, out, _ = run(capsys, "detect", "--pattern", "2blossom", g7_minus_file, "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc) == 1 and doc[0]["kind"] == "2-blossom"


def test_detect_invariant_exit_codes(capsys, q3_file, g7_minus_file):
    code, out, _ = run(capsys, "detect", "--pattern", "invariant", q3_file)
    assert code == 0 and out.strip() == "ok"
    code, out, _ = run(capsys, "detect", "--pattern", "invariant", g7_minus_file)
    assert code == 1 and "2-blossom" in out


def test_generate_solve_pipeline(capsys, tmp_path):
    out_file = str(tmp_path / "ring.gr")
    code, _, _ = run(capsys, "generate", "--family", "necklace-ring", "--param", "3", "-o", out_file)
    assert code == 0
    code, _, _ = run(capsys, "solve", "-k", "5", out_file)
    assert code == 0
    code, _, _ = run(capsys, "solve", "-k", "6", out_file)
    assert code == 1


def test_generate_dot(capsys):
    code, out, _ = run(capsys, "generate", "--family", "q3", "--dot")
    assert code == 0 and out.startswith("graph")


def test_generate_bad_param(capsys):
    code, _, err = run(capsys, "generate", "--family", "flowerbed", "--param", "1")
    assert code == 2 and "error" in err


def test_maximize_exact_and_heuristic(capsys, q3_file):
    code, out, _ = run(capsys, "maximize", "--exact", q3_file, "--json")
    assert code == 0
    assert json.loads(out)["leaves"] == 4
    code, out, _ = run(capsys, "maximize", "--heuristic", q3_file, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["leaves"] >= 4
    from fractions import Fraction

    assert Fraction(doc["bound_num"], doc["bound_den"]) == 4
    assert doc["met"] is True
    tree = [tuple(e) for e in doc["tree"]]
    assert verify_spanning_tree(q3(), tree)


def test_reduce_trace_and_replay(capsys, tmp_path):
    # a reducible invariant graph: diamond with a high-degree connector
    from maxleaf.graphs import Graph

    g = Graph(edges=[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 5), (1, 6), (4, 7)])
    src = tmp_path / "in.gr"
    src.write_text(write_graph(g))
    trace = tmp_path / "trace.jsonl"
    reduced_file = tmp_path / "red.gr"
    code, _, _ = run(capsys, "reduce", str(src), "--trace", str(trace), "-o", str(reduced_file))
    assert code == 0
    steps = [json.loads(line) for line in trace.read_text().splitlines()]
    assert steps and steps[0]["rule"] == "R1"
    code, out, _ = run(capsys, "reduce", str(src), "--replay", str(trace))
    assert code == 0
    replayed = parse_graph(out)
    assert replayed == parse_graph(reduced_file.read_text())


def test_reduce_fpt_mode(capsys, g7_minus_file):
    code, out, _ = run(capsys, "reduce", g7_minus_file, "--fpt", "-k", "5")
    assert code == 0
    assert "k now 4" in out


def test_suppress_output(capsys, tmp_path):
    from maxleaf.graphs import Graph

    g = Graph(edges=[(1, 2), (2, 3), (3, 1), (1, 4), (4, 5)])
    src = tmp_path / "tri.gr"
    src.write_text(write_graph(g))
    code, out, _ = run(capsys, "suppress", str(src), "--json")
    assert code == 0
    doc = json.loads(out)
    loops = [e for e in doc["edges"] if e["loop"]]
    assert len(loops) == 1 and loops[0]["internal_count"] == 2


def test_verify_g7_q3(capsys):
    code, out, _ = run(capsys, "verify", "g7", "q3")
    assert code == 0
    assert out.count("PASS") == 2


def test_verify_unknown_check_fails(capsys):
    code, out, _ = run(capsys, "verify", "nonsense")
    assert code == 1 and "FAIL" in out


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0


def test_usage_error_exit_2(capsys):
    code, _, _ = run(capsys, "solve", "q3.gr")  # missing -k
    assert code == 2


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "solve", "-k", "3", "/nonexistent/file.gr")
    assert code == 2 and "error" in err


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.gr"
    bad.write_text("p 2 1\ne 1 9\n")
    code, _, err = run(capsys, "solve", "-k", "2", str(bad))
    assert code == 2 and "error" in err
