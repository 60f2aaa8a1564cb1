"""Fixed graphs and trees used by the command line, the tutorials, and the tests."""
from .graph import Graph, complete_graph, disjoint_union, empty_graph, join, parse_graph
from .tree import MDTree, parse_tree

# Nine-vertex graph on which refinement around pivot i leaves a marked child under a strong module.
FIXTURE_GRAPH_TEXT = """\
vertices: a b c d e f g h i
a b
a c
a d
a e
a g
a h
a i
b d
b e
b f
b g
b h
b i
c d
c f
c g
c h
c i
d e
d g
d h
d i
e f
e i
f g
f h
g i
h i
"""

FIXTURE_TREE_TEXT = "(series (parallel (series a d i) f) (prime b c e (parallel g h)))"
FIXTURE_COMPLEMENT_TREE_TEXT = "(parallel (series (parallel a d i) f) (prime b c e (series g h)))"
# Root claimed series although its children's quotient contains the non-adjacent pair b, c.
FIXTURE_BUGGY_TREE_TEXT = "(series e b c (parallel g h) (parallel f (series i a d)))"

FIXTURE_PIVOT = "i"
# Processing order putting the right-hand vertex f first.
FIXTURE_ORDER = ("f", "a", "b", "c", "e", "g", "h", "d")
FIXTURE_VIOLATION = frozenset("bcegh")


def fixture_graph() -> Graph:
    """
    Build the nine-vertex fixture as a composition.

    The triangle on ``a, d, i`` next to an isolated ``f`` is joined to the prime part: the path ``e - b - g - c``
    with ``h`` a twin of ``g``.
    """
    left = disjoint_union(complete_graph(["a", "d", "i"]), empty_graph(["f"]))
    right = Graph(
        ["b", "c", "e", "g", "h"],
        [("e", "b"), ("b", "g"), ("g", "c"), ("b", "h"), ("h", "c")],
    )
    return join(left, right).relabel_order(list("abcdefghi"))


def parsed_fixture_graph() -> Graph:
    return parse_graph(FIXTURE_GRAPH_TEXT)


def fixture_tree() -> MDTree:
    return parse_tree(FIXTURE_TREE_TEXT)
