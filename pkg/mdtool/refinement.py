"""
Refinement of the ordered list of trees around a pivot, and the check of the claim that, after refinement, the nodes
without marked children are exactly the strong modules not containing the pivot.

The forest is ``T(N_0), x, T(N_1), ..., T(N_k)``: the decomposition tree of the pivot's neighborhood, the pivot slot,
then one decomposition tree per further BFS layer. Each vertex refines the forest with the far endpoints of its
active edges; splits and direction marks are recorded as an event trace.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .graph import Edge, Graph, VertexSet, bfs_layers, induced_subgraph
from .oracle import build_md_tree, strong_modules
from .tree import MDNode, NodeKind

log = logging.getLogger(__name__)  # Get logger instance.


class Direction(str, Enum):
    """Direction of a split, recorded on the nodes it marks."""

    LEFT = "L"
    RIGHT = "R"


class Mark:
    """
    Accumulating set of directions on a forest node. Marks are only ever added.

    Attributes
    ----------
    directions : Set[Direction]
        The directions the node has been marked with; empty means unmarked.
    """

    def __init__(self) -> None:
        self.directions: Set[Direction] = set()

    def add(self, direction: Direction) -> bool:
        """Add a direction. Returns True iff it was not present before."""
        if direction in self.directions:
            return False
        self.directions.add(direction)
        return True

    def __bool__(self) -> bool:
        return bool(self.directions)

    def __contains__(self, direction: object) -> bool:
        return direction in self.directions

    @property
    def suffix(self) -> str:
        """``*L``, ``*R``, ``*LR``, or the empty string if unmarked."""
        if not self.directions:
            return ""
        return "*" + "".join(d.value for d in (Direction.LEFT, Direction.RIGHT) if d in self.directions)


class FNode(MDNode):
    """
    Forest node: a decomposition-tree node with an identity, a parent link, and a mark.

    Node identities are assigned by the owning forest in creation order. When a root is split it ceases to exist;
    marks live on nodes, not on vertex sets.

    Attributes
    ----------
    node_id : int
        The identity of the node within its forest.
    mark : Mark
        The direction marks of the node.
    parent : FNode | None
        The parent node, None for the root of a forest entry.
    """

    def __init__(
        self,
        node_id: int,
        kind: NodeKind,
        children: Optional[List["FNode"]] = None,
        label: Optional[str] = None,
    ) -> None:
        super().__init__(kind, children, label)
        self.node_id = node_id
        self.mark = Mark()
        self.parent: Optional[FNode] = None
        for child in self.children:
            child.parent = self

    def ancestors(self) -> List["FNode"]:
        """Proper ancestors, bottom-up."""
        result = []
        node = self.parent
        while node is not None:
            result.append(node)
            node = node.parent
        return result

    def has_marked_child(self) -> bool:
        return any(child.mark for child in self.children)

    def render(self) -> str:
        """Tree text with mark suffixes on marked kinds and labels."""
        if self.is_leaf:
            return self.label + self.mark.suffix
        return (
            "("
            + " ".join([self.kind.value + self.mark.suffix] + [c.render() for c in self.children])
            + ")"
        )


class PivotSlot:
    """The pivot's place in the ordered forest."""

    def __init__(self, label: str) -> None:
        self.label = label

    def render(self) -> str:
        return f"[{self.label}]"


class EventKind(str, Enum):
    VERTEX_PROCESSED = "vertex-processed"
    SUBTREE_IDENTIFIED = "subtree-identified"
    SPLIT_APPLIED = "split-applied"
    NODE_MARKED = "node-marked"
    PRIME_PROPAGATION = "prime-propagation"


@dataclass(frozen=True)
class RefineEvent:
    """
    One entry of the refinement trace.

    Attributes
    ----------
    step : int
        1-based position in the trace.
    kind : EventKind
        The event kind.
    payload : Dict[str, Any]
        Node identities, leafsets, labels, and directions describing the event. Split and mark payloads carry enough
        to replay them on the initial forest.
    """

    step: int
    kind: EventKind
    payload: Dict[str, Any] = field(default_factory=dict)

    def render(self, g: Graph) -> str:
        """Render as ``<step> <event-kind> <payload>`` with sets in vertex order."""
        p = self.payload

        def ref(node_id: int, leafset: VertexSet) -> str:
            return f"#{node_id}{g.render_set(leafset)}"

        def ids(node_ids: Sequence[int]) -> str:
            return "[" + ",".join(f"#{i}" for i in node_ids) + "]"

        if self.kind is EventKind.VERTEX_PROCESSED:
            body = f"{p['vertex']} {p['position']} X={g.render_set(p['X'])}"
        elif self.kind is EventKind.SUBTREE_IDENTIFIED:
            parent = "-" if p["parent"] is None else ref(p["parent"], p["parent_leafset"])
            body = f"{ref(p['node'], p['leafset'])} parent={parent}"
        elif self.kind is EventKind.SPLIT_APPLIED:
            body = (
                f"{ref(p['parent'], p['parent_leafset'])} side={p['side'].value} "
                f"root={'yes' if p['root'] else 'no'} A={ids(p['a'])} B={ids(p['b'])} "
                f"Ta={ref(p['ta'], p['ta_leafset'])} Tb={ref(p['tb'], p['tb_leafset'])}"
            )
        elif self.kind is EventKind.NODE_MARKED:
            body = f"{ref(p['node'], p['leafset'])} {p['direction'].value}"
        else:
            body = (
                f"{ref(p['node'], p['leafset'])} {p['direction'].value} "
                f"children={ids(p['children'])}"
            )
        return f"{self.step} {self.kind.value} {body}"


def render_trace(events: Iterable[RefineEvent], g: Graph) -> str:
    """Render an event trace, one event per line."""
    return "".join(event.render(g) + "\n" for event in events)


class ActiveEdgeSet:
    """
    The active edges for a pivot: edges at the pivot and edges whose endpoints lie in different BFS layers.

    Attributes
    ----------
    edges : FrozenSet[FrozenSet[str]]
        The active edges as unordered pairs.
    """

    def __init__(self, graph: Graph, edges: Iterable[Edge]) -> None:
        self._graph = graph
        self.edges = frozenset(frozenset(e) for e in edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge: object) -> bool:
        try:
            return frozenset(edge) in self.edges
        except TypeError:
            return False

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted())

    def sorted(self) -> List[Edge]:
        """Edges in canonical order, each as (lower-index endpoint, higher-index endpoint)."""
        return [e for e in self._graph.edges() if frozenset(e) in self.edges]

    def opposite(self, v: str) -> VertexSet:
        """Far endpoints of the active edges incident to ``v``."""
        return frozenset(w for e in self.edges if v in e for w in e if w != v)


def active_edges(g: Graph, x: str) -> ActiveEdgeSet:
    """
    Get the active edges for a pivot.

    Parameters
    ----------
    g : Graph
        The graph.
    x : str
        The pivot.

    Returns
    -------
    ActiveEdgeSet
        Every edge incident to ``x`` and every edge whose endpoints lie in different BFS layers of ``x``.
    """
    layer_of = {x: -1}
    for j, layer in enumerate(bfs_layers(g, x)):
        for v in layer:
            layer_of[v] = j
    return ActiveEdgeSet(
        g,
        [
            (u, v)
            for u, v in g.edges()
            if x in (u, v) or layer_of[u] != layer_of[v]
        ],
    )


class OrderedForest:
    """
    Ordered list of trees around a pivot, refined in place.

    Attributes
    ----------
    graph : Graph
        The graph the forest partitions.
    pivot : str
        The pivot vertex.
    entries : List[FNode | PivotSlot]
        The forest entries in order, exactly one of them the pivot slot.
    trace : List[RefineEvent]
        Every event emitted so far, in order.

    Methods
    -------
    refine()
        Refine the forest by a vertex set (one run of the split-and-mark procedure).
    process_vertex()
        Refine the forest with one vertex's active edges, choosing split directions by its position.
    apply_event()
        Re-apply a recorded split or mark event.
    """

    def __init__(
        self,
        graph: Graph,
        pivot: str,
        left: Sequence[FNode] = (),
        right: Sequence[FNode] = (),
    ) -> None:
        """
        Initialize a forest.

        Parameters
        ----------
        graph : Graph
            The graph.
        pivot : str
            The pivot vertex.
        left : Sequence[FNode], optional
            The trees left of the pivot slot.
        right : Sequence[FNode], optional
            The trees right of the pivot slot.
        """
        self.graph = graph
        self.pivot = pivot
        self.entries: List[Union[FNode, PivotSlot]] = [*left, PivotSlot(pivot), *right]
        self.trace: List[RefineEvent] = []
        self._next_id = 1 + max((n.node_id for n in self.iter_nodes()), default=0)

    @property
    def pivot_position(self) -> int:
        return next(i for i, e in enumerate(self.entries) if isinstance(e, PivotSlot))

    def trees(self) -> List[FNode]:
        return [e for e in self.entries if isinstance(e, FNode)]

    def left_trees(self) -> List[FNode]:
        return self.entries[: self.pivot_position]

    def right_trees(self) -> List[FNode]:
        return self.entries[self.pivot_position + 1 :]

    def iter_nodes(self) -> Iterator[FNode]:
        """Pre-order over all trees, left to right; the pivot slot is not a node."""
        for tree in self.trees():
            yield from tree.iter_nodes()

    def leaves(self) -> List[str]:
        """Leaf labels left to right, pivot excluded."""
        return [label for tree in self.trees() for label in tree.leaves()]

    def find(self, node_id: int) -> FNode:
        for node in self.iter_nodes():
            if node.node_id == node_id:
                return node
        raise ValueError(f"No node #{node_id} in the forest.")

    def entry_of(self, label: str) -> FNode:
        """Root of the forest entry containing a vertex."""
        for tree in self.trees():
            if label in tree.leafset:
                return tree
        raise ValueError(f"Vertex {label!r} is not in any forest entry.")

    def is_left(self, label: str) -> bool:
        """Whether a vertex lies in a tree left of the pivot."""
        return any(label in tree.leafset for tree in self.left_trees())

    def new_node(
        self,
        kind: NodeKind,
        children: Optional[List[FNode]] = None,
        label: Optional[str] = None,
        node_id: Optional[int] = None,
    ) -> FNode:
        if node_id is None:
            node_id = self._next_id
        self._next_id = max(self._next_id, node_id + 1)
        return FNode(node_id, kind, children, label)

    def adopt(self, node: MDNode) -> FNode:
        """Copy a decomposition tree into forest nodes, numbering them in pre-order."""
        if node.is_leaf:
            return self.new_node(NodeKind.LEAF, label=node.label)
        parent_id = self._next_id
        self._next_id += 1
        children = [self.adopt(child) for child in node.children]
        return self.new_node(node.kind, children, node_id=parent_id)

    def mark_table(self) -> Dict[int, FrozenSet[Direction]]:
        """Marks of all existing nodes by identity."""
        return {node.node_id: frozenset(node.mark.directions) for node in self.iter_nodes()}

    def render(self) -> str:
        """Entries in tree text format with mark suffixes, the pivot slot as ``[x]``."""
        return " ".join(entry.render() for entry in self.entries)

    def _emit(self, kind: EventKind, **payload: Any) -> RefineEvent:
        event = RefineEvent(len(self.trace) + 1, kind, payload)
        self.trace.append(event)
        log.debug(event.render(self.graph))
        return event

    def _mark(self, node: FNode, direction: Direction) -> None:
        if not node.mark.add(direction):
            return
        self._emit(EventKind.NODE_MARKED, node=node.node_id, leafset=node.leafset, direction=direction)
        if node.kind is NodeKind.PRIME:
            # A marked prime node marks all its children.
            self._emit(
                EventKind.PRIME_PROPAGATION,
                node=node.node_id,
                leafset=node.leafset,
                direction=direction,
                children=[c.node_id for c in node.children],
            )
            for child in node.children:
                self._mark(child, direction)

    def _split(
        self,
        parent: FNode,
        a: List[FNode],
        b: List[FNode],
        side: Direction,
        ta_id: Optional[int] = None,
        tb_id: Optional[int] = None,
    ) -> Tuple[FNode, FNode]:
        # A single tree keeps its own root; only a new unifying root takes the parent's kind.
        ta = a[0] if len(a) == 1 else self.new_node(parent.kind, a, node_id=ta_id)
        tb = b[0] if len(b) == 1 else self.new_node(parent.kind, b, node_id=tb_id)
        if parent.parent is None:
            position = next(i for i, e in enumerate(self.entries) if e is parent)
            self.entries[position : position + 1] = [ta, tb] if side is Direction.LEFT else [tb, ta]
            ta.parent = tb.parent = None
        else:
            parent.children = [ta, tb]
            ta.parent = tb.parent = parent
        return ta, tb

    def refine(self, x_set: Iterable[str], side: Direction) -> List[RefineEvent]:
        """
        Refine the forest by a vertex set.

        Finds the maximal subtrees whose leaves all lie in ``x_set`` and their parents. Each non-prime parent is split
        into the tree of its children among those subtrees and the tree of its other children; a split root is
        replaced in the forest by the two parts in split order, a split inner node gets the two parts as its only
        children. The roots of both parts and all their ancestors are marked. Each prime parent is marked together
        with its children and ancestors. Any prime node that receives a mark passes it on to its children.

        Parameters
        ----------
        x_set : Iterable[str]
            A nonempty set of forest leaves not containing the pivot.
        side : Direction
            Left splits put the refining part first; every mark made carries this direction.

        Returns
        -------
        List[RefineEvent]
            The events emitted by this call.

        Raises
        ------
        ValueError
            If the set is empty, contains the pivot, or contains a vertex that is not a forest leaf.
        """
        x_set = frozenset(x_set)
        if not x_set:
            raise ValueError("Refining set must be nonempty.")
        if self.pivot in x_set:
            raise ValueError(f"Refining set contains the pivot {self.pivot!r}.")
        unknown = x_set - set(self.leaves())
        if unknown:
            raise ValueError(f"Refining set contains unknown vertices {sorted(unknown)}.")
        first = len(self.trace)

        maximal: List[FNode] = []

        def visit(node: FNode) -> None:
            if node.leafset <= x_set:
                maximal.append(node)
                return
            for child in node.children:
                visit(child)

        for tree in self.trees():
            visit(tree)
        parents: List[FNode] = []
        for node in maximal:
            parent = node.parent
            self._emit(
                EventKind.SUBTREE_IDENTIFIED,
                node=node.node_id,
                leafset=node.leafset,
                parent=None if parent is None else parent.node_id,
                parent_leafset=None if parent is None else parent.leafset,
            )
            if parent is not None and not any(parent is p for p in parents):
                parents.append(parent)

        tops = {id(node) for node in maximal}
        for parent in [p for p in parents if p.kind is not NodeKind.PRIME]:
            a = [c for c in parent.children if id(c) in tops]
            b = [c for c in parent.children if id(c) not in tops]
            parent_leafset = parent.leafset
            root = parent.parent is None
            ta, tb = self._split(parent, a, b, side)
            self._emit(
                EventKind.SPLIT_APPLIED,
                parent=parent.node_id,
                parent_leafset=parent_leafset,
                parent_kind=parent.kind,
                side=side,
                root=root,
                a=[c.node_id for c in a],
                b=[c.node_id for c in b],
                ta=ta.node_id,
                ta_leafset=ta.leafset,
                ta_new=len(a) > 1,
                tb=tb.node_id,
                tb_leafset=tb.leafset,
                tb_new=len(b) > 1,
            )
            for part in (ta, tb):
                self._mark(part, side)
                for ancestor in part.ancestors():
                    self._mark(ancestor, side)

        for parent in [p for p in parents if p.kind is NodeKind.PRIME]:
            self._mark(parent, side)
            for child in parent.children:
                self._mark(child, side)
            for ancestor in parent.ancestors():
                self._mark(ancestor, side)
        return self.trace[first:]

    def process_vertex(self, v: str, active: ActiveEdgeSet) -> List[RefineEvent]:
        """
        Refine the forest with the active edges of one vertex.

        The refining set is the far endpoints of ``v``'s active edges without ``v`` and the pivot. A vertex left of the
        pivot refines every tree with left splits. A vertex right of the pivot refines the trees left of the pivot with
        left splits and the trees right of it with right splits.

        Returns
        -------
        List[RefineEvent]
            The events emitted for this vertex.
        """
        first = len(self.trace)
        position = "left" if self.is_left(v) else "right"
        x_set = active.opposite(v) - {v, self.pivot}
        self._emit(EventKind.VERTEX_PROCESSED, vertex=v, position=position, X=x_set)
        if not x_set:
            return self.trace[first:]
        if x_set & self.entry_of(v).leafset:
            log.debug(f"Vertex {v} refines the tree containing itself.")
        if position == "left":
            self.refine(x_set, Direction.LEFT)
        else:
            left_leaves = {label for tree in self.left_trees() for label in tree.leaves()}
            if x_set & left_leaves:
                self.refine(x_set & left_leaves, Direction.LEFT)
            if x_set - left_leaves:
                self.refine(x_set - left_leaves, Direction.RIGHT)
        return self.trace[first:]

    def apply_event(self, event: RefineEvent) -> None:
        """
        Re-apply a recorded event to this forest without emitting anything.

        Split events restructure the forest with the recorded node identities; mark events add the recorded
        direction. Other events carry no state change.
        """
        p = event.payload
        if event.kind is EventKind.SPLIT_APPLIED:
            parent = self.find(p["parent"])
            a = [self.find(i) for i in p["a"]]
            b = [self.find(i) for i in p["b"]]
            self._split(
                parent,
                a,
                b,
                p["side"],
                ta_id=p["ta"] if p["ta_new"] else None,
                tb_id=p["tb"] if p["tb_new"] else None,
            )
        elif event.kind is EventKind.NODE_MARKED:
            self.find(p["node"]).mark.add(p["direction"])


def build_ordered_forest(g: Graph, x: str, max_n: Optional[int] = None) -> OrderedForest:
    """
    Build the ordered list of trees for a pivot.

    Parameters
    ----------
    g : Graph
        The graph.
    x : str
        The pivot.
    max_n : int, optional
        The oracle size limit for the layer decompositions.

    Returns
    -------
    OrderedForest
        The decomposition tree of the neighborhood left of the pivot slot (omitted if the pivot is isolated), then
        the decomposition trees of the further BFS layers in layer order. Nodes are numbered in pre-order from 1.

    Raises
    ------
    ValueError
        If ``x`` is not a vertex of ``g``.
    SizeLimitError
        If a layer exceeds the oracle limit.
    """
    layers = bfs_layers(g, x)
    forest = OrderedForest(g, x)
    for j, layer in enumerate(layers):
        if not layer:
            continue
        tree = forest.adopt(build_md_tree(induced_subgraph(g, layer), max_n).root)
        if j == 0:
            forest.entries.insert(forest.pivot_position, tree)
        else:
            forest.entries.append(tree)
    log.debug(f"Initial forest for pivot {x}: {forest.render()}")
    return forest


def refine_by_set(
    forest: OrderedForest, x_set: Iterable[str], side: Direction
) -> Tuple[OrderedForest, List[RefineEvent]]:
    """Refine a forest in place by a vertex set; see ``OrderedForest.refine``."""
    events = forest.refine(x_set, side)
    return forest, events


def resolve_order(forest: OrderedForest, order: Optional[Sequence[str]] = None) -> List[str]:
    """
    Get the vertex processing order.

    Parameters
    ----------
    forest : OrderedForest
        The initial forest.
    order : Sequence[str], optional
        An explicit order. Default is the forest's leaf order, left to right.

    Raises
    ------
    ValueError
        If the explicit order is not a permutation of the non-pivot vertices.
    """
    default = forest.leaves()
    if order is None:
        return default
    order = list(order)
    if len(order) != len(default) or set(order) != set(default):
        raise ValueError(
            f"Processing order must be a permutation of the vertices other than the pivot {forest.pivot!r}."
        )
    return order


def refine_all(
    g: Graph,
    x: str,
    order: Optional[Sequence[str]] = None,
    max_n: Optional[int] = None,
) -> Tuple[OrderedForest, List[RefineEvent]]:
    """
    Run the whole refinement for a pivot.

    Parameters
    ----------
    g : Graph
        The graph.
    x : str
        The pivot.
    order : Sequence[str], optional
        The vertex processing order, a permutation of the vertices other than ``x``. Default is the initial forest's
        leaf order.
    max_n : int, optional
        The oracle size limit.

    Returns
    -------
    OrderedForest
        The refined forest.
    List[RefineEvent]
        The full event trace.
    """
    forest = build_ordered_forest(g, x, max_n)
    active = active_edges(g, x)
    for v in resolve_order(forest, order):
        forest.process_vertex(v, active)
    return forest, forest.trace


def replay_trace(
    g: Graph, x: str, events: Iterable[RefineEvent], max_n: Optional[int] = None
) -> OrderedForest:
    """Rebuild a refined forest from the initial forest and a recorded trace."""
    forest = build_ordered_forest(g, x, max_n)
    for event in events:
        forest.apply_event(event)
    return forest


@dataclass
class Lemma4Report:
    """
    Outcome of comparing a refined forest with the strong modules not containing the pivot.

    Attributes
    ----------
    graph : Graph
        The graph.
    pivot : str
        The pivot.
    order : Tuple[str, ...]
        The processing order used.
    unmarked_leafsets : List[FrozenSet[str]]
        Leafsets of forest nodes without a marked child.
    target_family : List[FrozenSet[str]]
        Strong modules of the graph not containing the pivot.
    violations_necessary : List[FrozenSet[str]]
        Target modules whose forest node has a marked child.
    violations_exact : List[FrozenSet[str]]
        Symmetric difference of ``unmarked_leafsets`` and ``target_family``.
    trace : List[RefineEvent]
        The refinement trace.
    forest : OrderedForest
        The refined forest.
    """

    graph: Graph
    pivot: str
    order: Tuple[str, ...]
    unmarked_leafsets: List[VertexSet]
    target_family: List[VertexSet]
    violations_necessary: List[VertexSet]
    violations_exact: List[VertexSet]
    trace: List[RefineEvent]
    forest: OrderedForest

    @property
    def violated(self) -> bool:
        """Whether the necessary direction fails."""
        return bool(self.violations_necessary)

    def render(self, trace: bool = False, exact: bool = False) -> str:
        g = self.graph
        lines = []
        if trace:
            lines.extend(event.render(g) for event in self.trace)
            lines.append(f"forest {self.forest.render()}")
        lines.extend(f"violation {g.render_set(m)}" for m in self.violations_necessary)
        if exact:
            lines.extend(f"exact-mismatch {g.render_set(m)}" for m in self.violations_exact)
        if not self.violations_necessary:
            lines.append("OK")
        return "\n".join(lines) + "\n"


def lemma4_check(
    g: Graph,
    x: str,
    order: Optional[Sequence[str]] = None,
    max_n: Optional[int] = None,
) -> Lemma4Report:
    """
    Refine around a pivot and check the nodes without marked children against the strong modules avoiding it.

    The necessary-condition check flags every strong module not containing ``x`` whose forest node (matched by
    leafset) has a marked child. The exact check additionally lists forest nodes without marked children that are no
    such strong module, and such strong modules without a matching unmarked node. The pivot slot takes part in
    neither.

    Parameters
    ----------
    g : Graph
        The graph.
    x : str
        The pivot.
    order : Sequence[str], optional
        The processing order. Default is the initial forest's leaf order.
    max_n : int, optional
        The oracle size limit.

    Returns
    -------
    Lemma4Report
        The report.

    Raises
    ------
    ValueError
        If ``x`` is unknown or ``order`` is not a permutation of the other vertices.
    SizeLimitError
        If ``g`` exceeds the oracle limit.
    """
    forest = build_ordered_forest(g, x, max_n)
    resolved = resolve_order(forest, order)
    active = active_edges(g, x)
    for v in resolved:
        forest.process_vertex(v, active)

    nodes = list(forest.iter_nodes())
    by_leafset = {node.leafset: node for node in nodes}
    unmarked = g.sort_family({node.leafset for node in nodes if not node.has_marked_child()})
    target = g.sort_family(m for m in strong_modules(g, max_n) if x not in m)
    necessary = [m for m in target if m in by_leafset and by_leafset[m].has_marked_child()]
    exact = g.sort_family(set(unmarked) ^ set(target))
    if necessary:
        log.info(
            f"Pivot {x}: strong modules with marked children: "
            f"{', '.join(g.render_set(m) for m in necessary)}."
        )
    return Lemma4Report(
        graph=g,
        pivot=x,
        order=tuple(resolved),
        unmarked_leafsets=unmarked,
        target_family=target,
        violations_necessary=necessary,
        violations_exact=exact,
        trace=forest.trace,
        forest=forest,
    )
