import json
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional

import pyparsing as pp

from .graph import LABEL_PATTERN, Graph, GraphFormatError, VertexSet


class NodeKind(str, Enum):
    """Kind of a decomposition-tree node."""

    SERIES = "series"
    PARALLEL = "parallel"
    PRIME = "prime"
    LEAF = "leaf"

    def dual(self) -> "NodeKind":
        """Kind of the corresponding node in the complement's tree: series and parallel swap."""
        if self is NodeKind.SERIES:
            return NodeKind.PARALLEL
        if self is NodeKind.PARALLEL:
            return NodeKind.SERIES
        return self


DEGENERATE_KINDS = (NodeKind.SERIES, NodeKind.PARALLEL)

# Fill colors for DOT export: series blue, parallel red, prime green.
DOT_COLORS = {
    NodeKind.SERIES: "blue",
    NodeKind.PARALLEL: "red",
    NodeKind.PRIME: "green",
}


class MDNode:
    """
    A node of a modular decomposition tree.

    Internal nodes carry a kind and an ordered list of children; leaves carry a vertex label.

    Attributes
    ----------
    kind : NodeKind
        The node kind.
    children : List[MDNode]
        The children in order (empty for leaves).
    label : str | None
        The vertex label of a leaf, None for internal nodes.
    """

    def __init__(
        self,
        kind: NodeKind,
        children: Optional[List["MDNode"]] = None,
        label: Optional[str] = None,
    ) -> None:
        if (kind is NodeKind.LEAF) != (label is not None):
            raise ValueError("Exactly the leaf nodes carry a label.")
        self.kind = kind
        self.children = list(children) if children is not None else []
        self.label = label

    @classmethod
    def leaf(cls, label: str) -> "MDNode":
        return cls(NodeKind.LEAF, label=label)

    @property
    def is_leaf(self) -> bool:
        return self.kind is NodeKind.LEAF

    def leaves(self) -> List[str]:
        """Leaf labels from left to right."""
        if self.is_leaf:
            return [self.label]
        return [label for child in self.children for label in child.leaves()]

    @property
    def leafset(self) -> VertexSet:
        return frozenset(self.leaves())

    def iter_nodes(self) -> Iterator["MDNode"]:
        """Pre-order traversal."""
        yield self
        for child in self.children:
            yield from child.iter_nodes()

    def signature(self) -> tuple:
        """Order-independent structural signature; equal signatures mean equal trees up to child permutation."""
        if self.is_leaf:
            return (self.kind.value, self.label, ())
        return (self.kind.value, "", tuple(sorted(c.signature() for c in self.children)))

    def to_text(self) -> str:
        if self.is_leaf:
            return self.label
        return "(" + " ".join([self.kind.value] + [c.to_text() for c in self.children]) + ")"

    def to_dict(self) -> Dict[str, Any]:
        if self.is_leaf:
            return {"kind": self.kind.value, "leaf": self.label}
        return {"kind": self.kind.value, "children": [c.to_dict() for c in self.children]}

    def __repr__(self) -> str:
        return self.to_text()


class MDTree:
    """
    A rooted modular decomposition tree.

    Trees are unordered mathematically: equality is up to child permutation. The canonical form orders the children of
    every node by the vertex-order position of their first leaf, so canonical text is byte-stable.

    Attributes
    ----------
    root : MDNode
        The root node.
    """

    def __init__(self, root: MDNode) -> None:
        self.root = root

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MDTree):
            return NotImplemented
        return self.root.signature() == other.root.signature()

    def __hash__(self) -> int:
        return hash(self.root.signature())

    def __repr__(self) -> str:
        return f"MDTree({self.to_text()})"

    def leaves(self) -> List[str]:
        return self.root.leaves()

    def iter_nodes(self) -> Iterator[MDNode]:
        return self.root.iter_nodes()

    def leafsets(self, internal_only: bool = False) -> List[VertexSet]:
        """Leafsets of all nodes in pre-order, optionally of internal nodes only."""
        return [
            node.leafset
            for node in self.iter_nodes()
            if not (internal_only and node.is_leaf)
        ]

    def canonical(self, g: Graph) -> "MDTree":
        """
        Get a copy with every node's children ordered by the vertex-order position of their minimum leaf.

        Parameters
        ----------
        g : Graph
            The graph whose vertex order is used.
        """

        def order(node: MDNode) -> MDNode:
            if node.is_leaf:
                return MDNode.leaf(node.label)
            children = [order(c) for c in node.children]
            children.sort(key=lambda c: min(g.index(v) for v in c.leaves()))
            return MDNode(node.kind, children)

        return MDTree(order(self.root))

    def swap_degenerate_kinds(self) -> "MDTree":
        """Copy with series and parallel exchanged everywhere, child order kept."""

        def swap(node: MDNode) -> MDNode:
            if node.is_leaf:
                return MDNode.leaf(node.label)
            return MDNode(node.kind.dual(), [swap(c) for c in node.children])

        return MDTree(swap(self.root))

    def to_text(self) -> str:
        """Tree text format: ``tree := <label> | "(" kind tree+ ")"``."""
        return self.root.to_text()

    def to_json(self) -> str:
        return json.dumps(self.root.to_dict(), indent=2)

    def to_dot(self, name: str = "mdtree") -> str:
        """
        Export as a Graphviz DOT digraph with edges from parents to children.

        Node kinds are colored: series blue, parallel red, prime green.
        """
        lines = [f"digraph {name} {{", '    node [fontname="Helvetica"];']
        counter = 0

        def emit(node: MDNode) -> str:
            nonlocal counter
            node_id = f"n{counter}"
            counter += 1
            if node.is_leaf:
                lines.append(f'    {node_id} [label="{node.label}", shape=circle];')
            else:
                color = DOT_COLORS[node.kind]
                lines.append(
                    f'    {node_id} [label="{node.kind.value}", shape=box, color={color}];'
                )
                for child in node.children:
                    lines.append(f"    {node_id} -> {emit(child)};")
            return node_id

        emit(self.root)
        lines.append("}")
        return "\n".join(lines) + "\n"


def _tree_grammar() -> pp.ParserElement:
    tree = pp.Forward()
    kind = pp.MatchFirst(
        [pp.CaselessKeyword(k.value) for k in (NodeKind.SERIES, NodeKind.PARALLEL, NodeKind.PRIME)]
    )
    label = pp.Regex(LABEL_PATTERN)
    label.set_parse_action(lambda t: MDNode.leaf(t[0]))
    internal = pp.Suppress("(") + kind + pp.OneOrMore(tree) + pp.Suppress(")")
    internal.set_parse_action(lambda t: MDNode(NodeKind(t[0].lower()), list(t[1:])))
    tree <<= internal | label
    tree.ignore(pp.python_style_comment)
    return tree


_TREE = _tree_grammar()


def parse_tree(text: str) -> MDTree:
    """
    Parse the tree text format.

    Kinds are case-insensitive on input; tokens are whitespace-separated and ``#`` starts a comment.

    Raises
    ------
    GraphFormatError
        If the text is not a single well-formed tree.
    """
    try:
        result = _TREE.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise GraphFormatError(f"Invalid tree text: {e}")
    return MDTree(result[0])
