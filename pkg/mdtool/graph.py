import logging
import re
from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ordered_set import OrderedSet

log = logging.getLogger(__name__)  # Get logger instance.

VertexSet = FrozenSet[str]
Edge = Tuple[str, str]

LABEL_PATTERN = r"[^\s()*#,{}\[\]]+"
_LABEL_RE = re.compile(rf"^{LABEL_PATTERN}$")


class GraphFormatError(ValueError):
    """Malformed graph or tree text, or a label the graph does not know."""


def check_label(label: str) -> str:
    """
    Check that a vertex label is a single printable token.

    Raises
    ------
    GraphFormatError
        If the label is empty or contains whitespace, parentheses, or one of ``*#,{}[]``.
    """
    if not isinstance(label, str) or not _LABEL_RE.match(label):
        raise GraphFormatError(f"Invalid vertex label {label!r}.")
    return label


class Graph:
    """
    Undirected simple graph on an explicitly ordered vertex set.

    The vertex order is data: every operation preserves it and outcomes of the refinement machinery depend on it.
    Adjacency is stored as one integer bitmask per vertex, bit ``j`` standing for the ``j``-th vertex. Instances are
    treated as immutable after construction.

    Attributes
    ----------
    vertices : OrderedSet[str]
        The vertex labels in vertex order.

    Methods
    -------
    adjacent()
        Check whether two vertices are adjacent.
    neighbors()
        Get the neighborhood of a vertex in vertex order.
    edges()
        Get all edges in canonical order.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge] = ()) -> None:
        """
        Initialize a graph.

        Parameters
        ----------
        vertices : Iterable[str]
            The vertex labels in vertex order.
        edges : Iterable[Tuple[str, str]], optional
            The edges as label pairs. Repeated edges are merged.

        Raises
        ------
        GraphFormatError
            If a label is invalid or duplicated, an edge endpoint is unknown, or an edge is a self-loop.
        """
        self.vertices = OrderedSet()
        for label in vertices:
            check_label(label)
            if label in self.vertices:
                raise GraphFormatError(f"Duplicate vertex {label!r}.")
            self.vertices.add(label)
        self._masks = [0] * len(self.vertices)
        for u, v in edges:
            i, j = self._position(u), self._position(v)
            if i == j:
                raise GraphFormatError(f"Self-loop at vertex {u!r}.")
            self._masks[i] |= 1 << j
            self._masks[j] |= 1 << i

    @classmethod
    def from_masks(cls, vertices: Sequence[str], masks: Sequence[int]) -> "Graph":
        """Build a graph directly from adjacency bitmasks, bypassing edge-by-edge insertion."""
        graph = cls(vertices)
        graph._masks = list(masks)
        return graph

    def _position(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except KeyError:
            raise GraphFormatError(f"Unknown vertex {label!r}.")

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, label: object) -> bool:
        return label in self.vertices

    def __iter__(self) -> Iterator[str]:
        return iter(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return list(self.vertices) == list(other.vertices) and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((tuple(self.vertices), tuple(self._masks)))

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.num_edges}, vertices={' '.join(self.vertices)})"

    def index(self, label: str) -> int:
        """Position of a vertex in the vertex order."""
        return self._position(label)

    def mask(self, labels: Iterable[str]) -> int:
        """Bitmask of a vertex set."""
        m = 0
        for label in labels:
            m |= 1 << self._position(label)
        return m

    def labels(self, mask: int) -> List[str]:
        """Labels of a bitmask in vertex order."""
        return [label for i, label in enumerate(self.vertices) if mask >> i & 1]

    def neighbor_mask(self, label: str) -> int:
        return self._masks[self._position(label)]

    @property
    def masks(self) -> Tuple[int, ...]:
        """Adjacency bitmask of every vertex, in vertex order."""
        return tuple(self._masks)

    @property
    def full_mask(self) -> int:
        return (1 << len(self)) - 1

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self._masks[self._position(u)] >> self._position(v) & 1)

    def neighbors(self, label: str) -> List[str]:
        return self.labels(self.neighbor_mask(label))

    def degree(self, label: str) -> int:
        return bin(self.neighbor_mask(label)).count("1")

    @property
    def num_edges(self) -> int:
        return sum(bin(m).count("1") for m in self._masks) // 2

    def edges(self) -> List[Edge]:
        """
        Get all edges.

        Returns
        -------
        List[Tuple[str, str]]
            Each edge once as (lower-index endpoint, higher-index endpoint), ordered lexicographically by the index
            pair.
        """
        vertices = list(self.vertices)
        return [
            (vertices[i], vertices[j])
            for i in range(len(vertices))
            for j in range(i + 1, len(vertices))
            if self._masks[i] >> j & 1
        ]

    def sorted_labels(self, labels: Iterable[str]) -> List[str]:
        """Sort labels by vertex order."""
        return sorted(labels, key=self._position)

    def render_set(self, labels: Iterable[str]) -> str:
        """Render a vertex set as ``{a,b,c}`` in vertex order."""
        return "{" + ",".join(self.sorted_labels(labels)) + "}"

    def sort_family(self, family: Iterable[VertexSet]) -> List[VertexSet]:
        """Sort a family of vertex sets by their sorted tuples of vertex positions."""
        return sorted(family, key=lambda s: sorted(self._position(v) for v in s))

    def connected_components(self) -> List[VertexSet]:
        """Connected components, ordered by their first vertex."""
        seen = 0
        components = []
        for i in range(len(self)):
            if seen >> i & 1:
                continue
            component = 1 << i
            frontier = 1 << i
            while frontier:
                reach = 0
                for j in range(len(self)):
                    if frontier >> j & 1:
                        reach |= self._masks[j]
                frontier = reach & ~component
                component |= frontier
            seen |= component
            components.append(frozenset(self.labels(component)))
        return components

    def relabel_order(self, order: Sequence[str]) -> "Graph":
        """
        Get the same graph with a different vertex order.

        Raises
        ------
        ValueError
            If ``order`` is not a permutation of the vertices.
        """
        if sorted(order) != sorted(self.vertices) or len(set(order)) != len(order):
            raise ValueError("Vertex order must be a permutation of the graph's vertices.")
        return Graph(order, self.edges())


def parse_graph(text: str) -> Graph:
    """
    Parse the ``.mdg`` graph file format.

    The first content line is ``vertices: <label> <label> ...`` and fixes the vertex order; every further content line
    holds one edge as ``<label> <label>``. ``#`` starts a comment, blank lines are ignored.

    Parameters
    ----------
    text : str
        The file content.

    Returns
    -------
    Graph
        The parsed graph.

    Raises
    ------
    GraphFormatError
        If a line is malformed, a vertex is duplicated, an edge names an undeclared vertex, or an edge is a self-loop.
    """
    vertices: Optional[List[str]] = None
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if vertices is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "vertices":
                raise GraphFormatError(
                    f"Line {lineno}: expected 'vertices: <label> ...', got {raw!r}."
                )
            vertices = rest.split()
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(
                f"Line {lineno}: expected exactly two labels per edge line, got {raw!r}."
            )
        edges.append((tokens[0], tokens[1]))
    if vertices is None:
        raise GraphFormatError("Missing 'vertices:' line.")
    try:
        return Graph(vertices, edges)
    except GraphFormatError as e:
        raise GraphFormatError(f"Invalid graph file: {e}")


def serialize_graph(g: Graph) -> str:
    """Serialize a graph in the canonical ``.mdg`` form (edges ordered by endpoint positions)."""
    lines = ["vertices: " + " ".join(g.vertices)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def complement(g: Graph) -> Graph:
    """Complement over unordered pairs of distinct vertices; the vertex order is kept."""
    full = g.full_mask
    return Graph.from_masks(
        list(g.vertices), [full & ~m & ~(1 << i) for i, m in enumerate(g.masks)]
    )


def induced_subgraph(g: Graph, s: Iterable[str]) -> Graph:
    """
    Get the subgraph induced by a vertex set.

    Parameters
    ----------
    g : Graph
        The host graph.
    s : Iterable[str]
        The vertex set to keep.

    Returns
    -------
    Graph
        The induced subgraph, its vertex order inherited from ``g``.

    Raises
    ------
    ValueError
        If ``s`` contains a label unknown to ``g``.
    """
    keep = set(s)
    unknown = keep - set(g.vertices)
    if unknown:
        raise ValueError(f"Unknown vertices {sorted(unknown)} for induced subgraph.")
    kept = [v for v in g.vertices if v in keep]
    return Graph(kept, [(u, v) for u, v in g.edges() if u in keep and v in keep])


def bfs_layers(g: Graph, x: str) -> List[VertexSet]:
    """
    Split the vertices other than a pivot into BFS distance layers.

    Parameters
    ----------
    g : Graph
        The graph.
    x : str
        The pivot.

    Returns
    -------
    List[FrozenSet[str]]
        ``[N_0, N_1, ..., N_k]`` where ``N_0`` is the (possibly empty) neighborhood of ``x`` and ``N_j`` holds the
        vertices at distance ``j + 1``. Vertices unreachable from ``x`` form one final layer.

    Raises
    ------
    ValueError
        If ``x`` is not a vertex of ``g``.
    """
    if x not in g:
        raise ValueError(f"Unknown pivot {x!r}.")
    distance: Dict[str, int] = {x: 0}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in distance:
                distance[v] = distance[u] + 1
                queue.append(v)
    depth = max(distance.values())
    layers: List[List[str]] = [[] for _ in range(max(depth, 1))]
    for v, d in distance.items():
        if d > 0:
            layers[d - 1].append(v)
    unreachable = [v for v in g.vertices if v not in distance]
    if unreachable:
        layers.append(unreachable)
    return [frozenset(layer) for layer in layers]


def _check_disjoint(g1: Graph, g2: Graph) -> None:
    collision = set(g1.vertices) & set(g2.vertices)
    if collision:
        raise ValueError(f"Label collision: {sorted(collision)}.")


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Union of two graphs on disjoint label sets, vertex order ``g1`` then ``g2``."""
    _check_disjoint(g1, g2)
    return Graph(list(g1.vertices) + list(g2.vertices), g1.edges() + g2.edges())


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts."""
    _check_disjoint(g1, g2)
    cross = [(u, v) for u in g1.vertices for v in g2.vertices]
    return Graph(list(g1.vertices) + list(g2.vertices), g1.edges() + g2.edges() + cross)


def complete_graph(labels: Sequence[str]) -> Graph:
    return Graph(labels, combinations(labels, 2))


def empty_graph(labels: Sequence[str]) -> Graph:
    return Graph(labels)


def path_graph(labels: Sequence[str]) -> Graph:
    return Graph(labels, zip(labels, labels[1:]))


def cycle_graph(labels: Sequence[str]) -> Graph:
    return Graph(labels, list(zip(labels, labels[1:])) + [(labels[-1], labels[0])])


def default_labels(n: int) -> List[str]:
    """Labels ``a, b, c, ...`` for up to 26 vertices, ``v0, v1, ...`` beyond."""
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"v{i}" for i in range(n)]
