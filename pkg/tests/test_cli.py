import io
import json
from pathlib import Path

import pytest

from mdtool.cli import main
from mdtool.falsifier import run_paper_fixture
from mdtool.fixtures import FIXTURE_COMPLEMENT_TREE_TEXT, FIXTURE_TREE_TEXT
from mdtool.graph import complement, parse_graph

DATA = Path(__file__).parent / "data"
G = str(DATA / "g.mdg")
K1 = str(DATA / "k1.mdg")
K2 = str(DATA / "k2.mdg")


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_decompose(capsys):
    """Test the default tree output against the golden file."""
    status, out = run(capsys, "decompose", G)
    assert status == 0
    assert out == (DATA / "g_tree.txt").read_text()
    assert out == FIXTURE_TREE_TEXT + "\n"


def test_decompose_single_vertex(capsys):
    """Test the single-vertex graph."""
    assert run(capsys, "decompose", K1) == (0, "a\n")


def test_decompose_formats(capsys):
    """Test the DOT and JSON outputs."""
    status, out = run(capsys, "decompose", G, "--format", "dot")
    assert status == 0
    assert out.startswith("digraph mdtree {")
    status, out = run(capsys, "decompose", G, "--format", "json")
    assert status == 0
    assert json.loads(out)["kind"] == "series"


def test_decompose_complement(tmp_path, capsys):
    """Test that the complement graph file decomposes into the swapped tree."""
    status, out = run(capsys, "complement", G)
    assert status == 0
    assert parse_graph(out) == complement(parse_graph((DATA / "g.mdg").read_text()))
    path = tmp_path / "gc.mdg"
    path.write_text(out)
    assert run(capsys, "decompose", str(path)) == (0, FIXTURE_COMPLEMENT_TREE_TEXT + "\n")


def test_validate(capsys):
    """Test validation of the golden tree and the buggy tree."""
    assert run(capsys, "validate", G, str(DATA / "g_tree.txt")) == (0, "OK\n")
    status, out = run(capsys, "validate", G, str(DATA / "g_buggy_tree.txt"))
    assert status == 1
    lines = out.splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("WRONG_KIND {a,b,c,d,e,f,g,h,i} b,c:")


def test_validate_stdin(monkeypatch, capsys):
    """Test reading the tree from stdin, including the decompose round trip."""
    monkeypatch.setattr("sys.stdin", io.StringIO("a\n"))
    assert run(capsys, "validate", K1, "-") == (0, "OK\n")
    _, tree = run(capsys, "decompose", G)
    monkeypatch.setattr("sys.stdin", io.StringIO(tree))
    assert run(capsys, "validate", G, "-") == (0, "OK\n")


def test_lemma4(capsys):
    """Test the violation report and the exit status."""
    status, out = run(capsys, "lemma4", G, "--pivot", "i", "--order", "f,a,b,c,e,g,h,d")
    assert status == 1
    assert out == "violation {b,c,e,g,h}\n"
    assert run(capsys, "lemma4", K2, "--pivot", "u") == (0, "OK\n")


def test_lemma4_trace(capsys):
    """Test that the trace matches the golden file."""
    status, out = run(capsys, "lemma4", G, "--pivot", "i", "--order", "f,a,b,c,e,g,h,d", "--trace")
    assert status == 1
    assert out == (DATA / "g_pivot_i_f_first.trace").read_text() + "violation {b,c,e,g,h}\n"


def test_lemma4_exact(capsys):
    """Test that exact mode adds lines without changing the exit status."""
    status, out = run(capsys, "lemma4", G, "--pivot", "i", "--exact")
    assert status == 1
    assert "exact-mismatch {a,d}" in out.splitlines()
    status, out = run(capsys, "lemma4", K2, "--pivot", "u", "--exact")
    assert status == 0


def test_refine(capsys):
    """Test that refine prints the golden trace and exits 0."""
    status, out = run(capsys, "refine", G, "--pivot", "i", "--order", "f,a,b,c,e,g,h,d")
    assert status == 0
    assert out == (DATA / "g_pivot_i_f_first.trace").read_text()


def test_dual_check(capsys):
    """Test the duality check on the fixture and a single vertex."""
    assert run(capsys, "dual-check", G) == (0, "OK\n")
    assert run(capsys, "dual-check", K1) == (0, "OK\n")


def test_falsify_replay(capsys):
    """Test replaying the fixture finding."""
    status, out = run(capsys, "falsify", "--replay", "paper-fixture")
    assert status == 1
    (line,) = out.splitlines()
    finding = json.loads(line)
    assert finding["pivot"] == "i"
    assert finding["violations"] == [["b", "c", "e", "g", "h"]]
    assert finding["order"] == ["f", "a", "b", "c", "e", "g", "h", "d"]


def test_falsify_replay_file(tmp_path, capsys):
    """Test replaying a findings file written by a previous run."""
    _, out = run(capsys, "falsify", "--replay", "paper-fixture")
    path = tmp_path / "findings.jsonl"
    path.write_text(out)
    assert run(capsys, "falsify", "--replay", str(path)) == (1, out)


def test_falsify_replay_stale_file(tmp_path, capsys):
    """Test that a finding whose recorded violations differ from the replay is rejected, not rewritten."""
    finding = run_paper_fixture()
    finding.violations = [frozenset("ad")]
    path = tmp_path / "findings.jsonl"
    path.write_text(finding.to_json() + "\n")
    assert run(capsys, "falsify", "--replay", str(path)) == (2, "")


def test_falsify_search(capsys):
    """Test an exhaustive run without findings and a planted random run."""
    assert run(capsys, "falsify", "--mode", "exhaustive", "--n-min", "1", "--n-max", "3") == (0, "")
    status, out = run(capsys, "falsify", "--n-min", "2", "--n-max", "4", "--instances", "5", "--plant-fixture")
    assert status == 1
    assert json.loads(out.splitlines()[0])["instance_index"] == 0


def test_falsify_minimize(capsys):
    """Test that minimized findings are no larger than the fixture and still violate."""
    status, out = run(capsys, "falsify", "--replay", "paper-fixture", "--minimize")
    assert status == 1
    finding = json.loads(out)
    g = parse_graph(finding["graph"])
    assert len(g) <= 9
    assert finding["violations"]


@pytest.mark.parametrize(
    "argv",
    [
        ["lemma4", G, "--pivot", "z"],
        ["lemma4", G, "--pivot", "i", "--order", "f,a"],
        ["decompose", "no-such-file.mdg"],
        ["validate", G, str(DATA / "g.mdg")],
    ],
)
def test_usage_errors(argv, capsys):
    """Test that bad pivots, bad orders, missing files, and malformed trees exit 2."""
    status, out = run(capsys, *argv)
    assert status == 2
    assert out == ""


def test_size_limit(capsys, monkeypatch):
    """Test the size-limit exit status from the flag, the environment, and the search caps."""
    assert run(capsys, "decompose", G, "--max-n", "8")[0] == 3
    monkeypatch.setenv("MDTOOL_MAX_N", "8")
    assert run(capsys, "dual-check", G)[0] == 3
    assert run(capsys, "falsify", "--mode", "exhaustive", "--n-max", "7")[0] == 3


def test_missing_subcommand():
    """Test that argparse rejects a missing subcommand."""
    with pytest.raises(SystemExit):
        main([])
