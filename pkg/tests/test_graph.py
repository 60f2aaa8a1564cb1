from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdtool.fixtures import FIXTURE_GRAPH_TEXT, fixture_graph, parsed_fixture_graph
from mdtool.graph import (
    Graph,
    GraphFormatError,
    bfs_layers,
    complement,
    complete_graph,
    cycle_graph,
    default_labels,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    join,
    parse_graph,
    path_graph,
    serialize_graph,
)

DATA = Path(__file__).parent / "data"


@st.composite
def small_graphs(draw, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_value=1, max_value=max_n))
    labels = default_labels(n)
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(labels, [p for p, keep in zip(pairs, chosen) if keep])


def test_parse_fixture_graph():
    """Test parsing the nine-vertex fixture file."""
    g = parse_graph((DATA / "g.mdg").read_text())
    assert list(g.vertices) == list("abcdefghi")
    assert g.num_edges == 28
    degrees = {v: g.degree(v) for v in g}
    assert degrees == {"a": 7, "b": 7, "c": 6, "d": 7, "e": 5, "f": 5, "g": 6, "h": 6, "i": 7}
    assert not g.adjacent("b", "c")
    assert g.adjacent("c", "b") == g.adjacent("b", "c")


def test_fixture_graph_construction():
    """Test that the composed fixture equals the parsed fixture."""
    assert fixture_graph() == parsed_fixture_graph()
    assert serialize_graph(fixture_graph()) == FIXTURE_GRAPH_TEXT


def test_parse_comments_and_blank_lines():
    """Test that comments and blank lines are ignored."""
    g = parse_graph("# a path\n\nvertices: x y z  # order\n x y\n\ny z # edge\n")
    assert list(g.vertices) == ["x", "y", "z"]
    assert g.edges() == [("x", "y"), ("y", "z")]


def test_parse_single_vertex():
    """Test the single-vertex file."""
    g = parse_graph((DATA / "k1.mdg").read_text())
    assert len(g) == 1
    assert g.num_edges == 0


@pytest.mark.parametrize(
    "text",
    [
        "",
        "a b\n",
        "vertices: a a\n",
        "vertices: a b\na c\n",
        "vertices: a b\na a\n",
        "vertices: a b\na b c\n",
        "vertices: a b(\n",
    ],
)
def test_parse_errors(text):
    """Test that malformed graph files raise format errors."""
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_repeated_edges_merge():
    """Test that repeated edges in either direction are one edge."""
    g = parse_graph("vertices: a b\na b\nb a\n")
    assert g.num_edges == 1


def test_complement():
    """Test complementing, including the involution and the order preservation."""
    g = path_graph(["p", "q", "r"])
    h = complement(g)
    assert list(h.vertices) == ["p", "q", "r"]
    assert h.edges() == [("p", "r")]
    assert complement(h) == g
    assert complement(Graph(["a"])) == Graph(["a"])


def test_induced_subgraph():
    """Test induced subgraphs."""
    g = parsed_fixture_graph()
    h = induced_subgraph(g, {"b", "c", "e"})
    assert list(h.vertices) == ["b", "c", "e"]
    assert h.edges() == [("b", "e")]
    assert len(induced_subgraph(g, set())) == 0
    assert induced_subgraph(g, g.vertices) == g
    with pytest.raises(ValueError):
        induced_subgraph(g, {"z"})


def test_bfs_layers_fixture():
    """Test the BFS layers of the fixture around i."""
    layers = bfs_layers(parsed_fixture_graph(), "i")
    assert layers == [frozenset("abcdegh"), frozenset("f")]


def test_bfs_layers_edge_cases():
    """Test BFS layers for a single vertex, an isolated pivot, and an unknown pivot."""
    assert bfs_layers(Graph(["a"]), "a") == [frozenset()]
    g = Graph(["x", "y", "z"], [("y", "z")])
    assert bfs_layers(g, "x") == [frozenset(), frozenset({"y", "z"})]
    path = path_graph(["a", "b", "c", "d"])
    assert bfs_layers(path, "a") == [frozenset("b"), frozenset("c"), frozenset("d")]
    with pytest.raises(ValueError):
        bfs_layers(g, "w")


def test_union_and_join():
    """Test disjoint union and join."""
    u = disjoint_union(complete_graph(["a", "b"]), empty_graph(["c"]))
    assert u.edges() == [("a", "b")]
    j = join(empty_graph(["a", "b"]), empty_graph(["c"]))
    assert j.edges() == [("a", "c"), ("b", "c")]
    with pytest.raises(ValueError):
        join(Graph(["a"]), Graph(["a"]))


def test_connected_components():
    """Test connected components."""
    g = Graph(["a", "b", "c", "d"], [("a", "c")])
    assert g.connected_components() == [frozenset("ac"), frozenset("b"), frozenset("d")]
    assert cycle_graph(["a", "b", "c", "d"]).connected_components() == [frozenset("abcd")]


def test_relabel_order():
    """Test reordering the vertices."""
    g = path_graph(["a", "b", "c"])
    h = g.relabel_order(["c", "b", "a"])
    assert list(h.vertices) == ["c", "b", "a"]
    assert h.edges() == [("c", "b"), ("b", "a")]
    assert h != g
    with pytest.raises(ValueError):
        g.relabel_order(["a", "b"])


def test_sets_render_in_vertex_order():
    """Test set rendering and family ordering."""
    g = parsed_fixture_graph()
    assert g.render_set({"h", "b", "g"}) == "{b,g,h}"
    assert g.render_set(set()) == "{}"
    assert g.sort_family([frozenset("bc"), frozenset("ad"), frozenset("a")]) == [
        frozenset("a"),
        frozenset("ad"),
        frozenset("bc"),
    ]


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_parse_serialize_roundtrip(g):
    """Test that parsing the serialization gives the same graph."""
    assert parse_graph(serialize_graph(g)) == g


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_complement_edge_count(g):
    """Test that a graph and its complement partition the vertex pairs."""
    n = len(g)
    assert g.num_edges + complement(g).num_edges == n * (n - 1) // 2
    assert complement(complement(g)) == g


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.data())
def test_bfs_layers_partition(g, data):
    """Test that BFS layers partition the non-pivot vertices and edges only join equal or adjacent layers."""
    x = data.draw(st.sampled_from(list(g.vertices)))
    layers = bfs_layers(g, x)
    seen = [v for layer in layers for v in layer]
    assert sorted(seen) == sorted(v for v in g.vertices if v != x)
    assert set(g.neighbors(x)) == set(layers[0])
    reachable = next(c for c in g.connected_components() if x in c)
    layer_of = {v: j for j, layer in enumerate(layers) for v in layer}
    for u, v in g.edges():
        if x in (u, v) or u not in reachable:
            continue
        assert abs(layer_of[u] - layer_of[v]) <= 1
