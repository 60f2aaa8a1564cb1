import pytest
from mpi4py import MPI

from mdtool.falsifier import (
    Falsifier,
    Finding,
    PlantedInstance,
    SearchSpec,
    fixture_instance,
    labeled_graphs,
    minimize,
    random_graph,
    read_findings,
    run_paper_fixture,
    search,
)
from mdtool.fixtures import FIXTURE_ORDER, FIXTURE_VIOLATION, parsed_fixture_graph
from mdtool.graph import Graph, induced_subgraph
from mdtool.oracle import SizeLimitError
from mdtool.refinement import lemma4_check
from mdtool.utils import WordStream


def test_fixture_finding():
    """Test the fixture finding and its replay."""
    finding = run_paper_fixture()
    assert finding.graph == parsed_fixture_graph()
    assert finding.pivot == "i"
    assert finding.order == FIXTURE_ORDER
    assert finding.violations == [FIXTURE_VIOLATION]
    assert finding.reproduces()
    report = finding.replay()
    assert report.violations_necessary == [FIXTURE_VIOLATION]
    assert report.render() == finding.replay().render()


def test_fixture_finding_other_pivot():
    """Test that the same graph with pivot a runs; the outcome is only recorded."""
    report = lemma4_check(parsed_fixture_graph(), "a")
    assert report.pivot == "a"
    assert all(m <= frozenset(report.graph.vertices) - {"a"} for m in report.violations_necessary)


def test_finding_json():
    """Test the JSON-lines fields and reading them back."""
    finding = run_paper_fixture()
    line = finding.to_json()
    assert "\n" not in line
    assert set(finding.to_dict()) == {"graph", "pivot", "order", "violations", "seed", "instance_index"}
    assert finding.to_dict()["violations"] == [["b", "c", "e", "g", "h"]]
    assert Finding.from_json(line) == finding
    assert read_findings(line + "\n\n" + line + "\n") == [finding, finding]
    with pytest.raises(ValueError):
        Finding.from_json('{"pivot": "i"}')


def test_spec_validation():
    """Test the search caps and domains."""
    with pytest.raises(SizeLimitError):
        SearchSpec(mode="exhaustive", n_max=7).validate()
    with pytest.raises(SizeLimitError):
        SearchSpec(orders="all-permutations", n_max=8).validate()
    with pytest.raises(SizeLimitError):
        SearchSpec(orders="all-permutations", n_max=5, planted=(PlantedInstance(parsed_fixture_graph()),)).validate()
    with pytest.raises(ValueError):
        SearchSpec(mode="clever").validate()
    with pytest.raises(ValueError):
        SearchSpec(n_min=4, n_max=3).validate()
    with pytest.raises(ValueError):
        SearchSpec(edge_probability=1.5).validate()
    SearchSpec(mode="exhaustive", n_max=6).validate()
    SearchSpec(orders="all-permutations", n_max=7).validate()


def test_random_graphs_are_seeded():
    """Test that the seeded generator reproduces graphs and respects the range."""
    first = [random_graph(WordStream(7, k), 3, 6) for k in range(30)]
    second = [random_graph(WordStream(7, k), 3, 6) for k in range(30)]
    assert first == second
    assert all(3 <= len(g) <= 6 for g in first)
    assert first != [random_graph(WordStream(8, k), 3, 6) for k in range(30)]
    assert random_graph(WordStream(1, 1), 4, 4, edge_probability=0.0).num_edges == 0
    assert random_graph(WordStream(1, 1), 4, 4, edge_probability=1.0).num_edges == 6


def test_labeled_graphs():
    """Test the exhaustive enumeration."""
    graphs = list(labeled_graphs(3))
    assert len(graphs) == 8
    assert len(set(graphs)) == 8
    assert graphs[0].num_edges == 0
    assert graphs[-1].num_edges == 3


def test_exhaustive_small_is_empty():
    """Test that no graph with at most three vertices violates."""
    assert search(SearchSpec(mode="exhaustive", n_min=1, n_max=3)) == []
    assert search(SearchSpec(mode="exhaustive", n_min=1, n_max=3, orders="all-permutations")) == []


def test_planted_fixture_instance():
    """Test that a random search with the fixture planted reports the fixture first."""
    spec = SearchSpec(mode="random", n_min=2, n_max=5, instance_count=10, seed=3, planted=(fixture_instance(),))
    findings = search(spec)
    assert findings
    first = findings[0]
    assert first.instance_index == 0
    assert first.seed == 3
    assert first.graph == parsed_fixture_graph()
    assert first.order == FIXTURE_ORDER
    assert first.violations == [FIXTURE_VIOLATION]
    assert all(f.reproduces() for f in findings)


def test_search_is_deterministic():
    """Test that the same seed gives the same findings."""
    spec = SearchSpec(mode="random", n_min=5, n_max=7, instance_count=40, seed=11)
    first = [f.to_json() for f in search(spec)]
    second = [f.to_json() for f in search(spec)]
    assert first == second
    keys = [f.instance_index for f in search(spec)]
    assert keys == sorted(keys)


def test_falsifier_pivot_selection():
    """Test that pivot selection first only uses the first vertex."""
    planted = PlantedInstance(parsed_fixture_graph(), order=None)
    falsifier = Falsifier(SearchSpec(instance_count=0, pivots="first", planted=(planted,)), MPI.COMM_SELF)
    runs = list(falsifier._runs(planted))
    assert [(position, x) for position, x, _, _ in runs] == [(0, "a")]
    falsifier = Falsifier(SearchSpec(instance_count=0, planted=(planted,)), MPI.COMM_SELF)
    assert [x for _, x, _, _ in falsifier._runs(planted)] == list("abcdefghi")


def test_summarize():
    """Test the finding counts by vertex count."""
    falsifier = Falsifier(SearchSpec(instance_count=0, planted=(fixture_instance(),)), MPI.COMM_SELF)
    findings = falsifier.search()
    assert falsifier.summarize(findings) == {9: 1}


def test_minimize():
    """Test that minimization keeps a violation, never grows, and is idempotent."""
    finding = run_paper_fixture()
    smaller = minimize(finding)
    assert len(smaller.graph) <= 9
    assert smaller.pivot == "i"
    assert smaller.violations
    assert lemma4_check(smaller.graph, smaller.pivot, smaller.order).violated
    assert minimize(smaller) == smaller
    for v in smaller.graph.vertices:
        if v == smaller.pivot:
            continue
        rest = [w for w in smaller.graph.vertices if w != v]
        order = [w for w in smaller.order if w != v]
        assert not lemma4_check(induced_subgraph(smaller.graph, rest), "i", order).violated


def test_minimize_requires_violation():
    """Test that a non-violating finding cannot be minimized."""
    g = Graph(["u", "v"], [("u", "v")])
    with pytest.raises(ValueError):
        minimize(Finding(g, "u", ("v",), []))
