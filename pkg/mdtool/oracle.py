"""
Brute-force modular decomposition.

Every function here enumerates vertex subsets and is exponential in the number of vertices. The module is the ground
truth the refinement machinery is judged against, so it never uses pivots or layers.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .graph import Graph, VertexSet, complement, induced_subgraph
from .tree import DEGENERATE_KINDS, MDNode, MDTree, NodeKind
from .utils import get_max_n

log = logging.getLogger(__name__)  # Get logger instance.


class SizeLimitError(ValueError):
    """A brute-force computation or a search was requested beyond its configured size cap."""


class ViolationCode(str, Enum):
    LEAVES_NOT_V = "LEAVES_NOT_V"
    NOT_A_MODULE = "NOT_A_MODULE"
    WRONG_KIND = "WRONG_KIND"
    NOT_MAXIMAL = "NOT_MAXIMAL"
    ARITY = "ARITY"


@dataclass(frozen=True)
class Violation:
    """
    One reason a claimed decomposition tree is not the modular decomposition of a graph.

    Attributes
    ----------
    code : ViolationCode
        Which check failed.
    subject : FrozenSet[str]
        The leafset of the offending node (the vertex set for ``LEAVES_NOT_V``).
    witnesses : List[str]
        ``LEAVES_NOT_V``: missing and repeated labels. ``NOT_A_MODULE``: distinguisher ``v`` adjacent to ``x`` but not
        to ``y``, as ``[v, x, y]``. ``WRONG_KIND``: the child representatives showing the quotient is of another kind.
        ``NOT_MAXIMAL`` and ``ARITY``: empty.
    message : str
        Human-readable description.
    """

    code: ViolationCode
    subject: VertexSet
    witnesses: List[str] = field(default_factory=list)
    message: str = ""

    def render(self, g: Graph) -> str:
        witnesses = ",".join(self.witnesses) if self.witnesses else "-"
        return f"{self.code.value} {g.render_set(self.subject)} {witnesses}: {self.message}"


def _check_size(g: Graph, max_n: Optional[int]) -> None:
    limit = get_max_n(max_n)
    if len(g) > limit:
        raise SizeLimitError(
            f"Graph has {len(g)} vertices, the brute-force oracle is limited to {limit}."
        )


def _module_masks(g: Graph) -> np.ndarray:
    """Bitmasks of all nonempty modules, in increasing integer order."""
    subsets = np.arange(1, 1 << len(g), dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for i, neighbors in enumerate(g.masks):
        inside = (subsets >> i) & 1 == 1
        hit = subsets & neighbors
        ok &= inside | (hit == 0) | (hit == subsets)
    return subsets[ok]


def _strong_masks(g: Graph) -> List[int]:
    modules = _module_masks(g)
    strong = []
    for m in modules:
        inter = modules & m
        overlap = (inter != 0) & (inter != m) & (inter != modules)
        if not overlap.any():
            strong.append(int(m))
    return strong


def find_distinguisher(g: Graph, m: Iterable[str]) -> Optional[Tuple[str, str, str]]:
    """
    Find a vertex outside a set that distinguishes two of its members.

    Parameters
    ----------
    g : Graph
        The graph.
    m : Iterable[str]
        A nonempty vertex set.

    Returns
    -------
    Tuple[str, str, str] | None
        ``(v, x, y)`` with ``v`` outside ``m`` adjacent to ``x`` but not to ``y``, the first such ``v`` in vertex order;
        None if ``m`` is a module.

    Raises
    ------
    ValueError
        If ``m`` is empty or contains unknown vertices.
    """
    members = set(m)
    if not members:
        raise ValueError("A module must be nonempty.")
    unknown = members - set(g.vertices)
    if unknown:
        raise ValueError(f"Unknown vertices {sorted(unknown)}.")
    mask = g.mask(members)
    for v in g.vertices:
        if v in members:
            continue
        hit = g.neighbor_mask(v) & mask
        if hit and hit != mask:
            x = g.labels(hit)[0]
            y = g.labels(mask & ~hit)[0]
            return v, x, y
    return None


def is_module(g: Graph, m: Iterable[str]) -> bool:
    """True iff every vertex outside ``m`` is adjacent to all of ``m`` or to none of it."""
    return find_distinguisher(g, m) is None


def all_modules(g: Graph, max_n: Optional[int] = None) -> List[VertexSet]:
    """
    Enumerate every nonempty module.

    Raises
    ------
    SizeLimitError
        If ``g`` has more vertices than the oracle limit.
    """
    _check_size(g, max_n)
    return [frozenset(g.labels(int(m))) for m in _module_masks(g)]


def strong_modules(g: Graph, max_n: Optional[int] = None) -> List[VertexSet]:
    """
    Enumerate the strong modules, i.e., the modules overlapping no other module.

    The result is a laminar family containing all singletons and ``V`` (for nonempty ``g``).

    Raises
    ------
    SizeLimitError
        If ``g`` has more vertices than the oracle limit.
    """
    _check_size(g, max_n)
    return [frozenset(g.labels(m)) for m in _strong_masks(g)]


def quotient_graph(g: Graph, parts: Sequence[Iterable[str]]) -> Graph:
    """Graph on one representative per part (its first vertex in vertex order), induced from ``g``."""
    representatives = [g.sorted_labels(part)[0] for part in parts]
    return induced_subgraph(g, representatives)


def _classify(q: Graph) -> NodeKind:
    k = len(q)
    if q.num_edges == k * (k - 1) // 2:
        return NodeKind.SERIES
    if q.num_edges == 0:
        return NodeKind.PARALLEL
    return NodeKind.PRIME


def quotient_kind(g: Graph, parts: Sequence[Iterable[str]]) -> NodeKind:
    """
    Classify a module split into child modules by its quotient.

    Parameters
    ----------
    g : Graph
        The graph.
    parts : Sequence[Iterable[str]]
        At least two disjoint nonempty vertex sets, each a module of the subgraph induced by their union.

    Returns
    -------
    NodeKind
        Series if the quotient is complete, parallel if it is edgeless, prime otherwise.

    Raises
    ------
    ValueError
        If there are fewer than two parts, parts are empty or overlap, or a part is not a module.
    """
    parts = [frozenset(p) for p in parts]
    if len(parts) < 2:
        raise ValueError("A quotient needs at least two parts.")
    union = frozenset().union(*parts)
    if any(not p for p in parts) or sum(len(p) for p in parts) != len(union):
        raise ValueError("Parts must be nonempty and pairwise disjoint.")
    host = induced_subgraph(g, union)
    for part in parts:
        witness = find_distinguisher(host, part)
        if witness is not None:
            raise ValueError(
                f"Part {host.render_set(part)} is not a module: {witness[0]} distinguishes "
                f"{witness[1]} and {witness[2]}."
            )
    return _classify(quotient_graph(g, parts))


def build_md_tree(g: Graph, max_n: Optional[int] = None) -> MDTree:
    """
    Build the modular decomposition tree from the strong-module family.

    Every non-singleton strong module becomes an internal node nested by inclusion and labeled by ``quotient_kind``;
    children are in canonical order.

    Parameters
    ----------
    g : Graph
        A nonempty graph.
    max_n : int, optional
        The oracle size limit. Default is resolved by ``get_max_n``.

    Returns
    -------
    MDTree
        The canonical modular decomposition tree.

    Raises
    ------
    ValueError
        If ``g`` is empty.
    SizeLimitError
        If ``g`` has more vertices than the oracle limit.
    """
    if len(g) == 0:
        raise ValueError("Cannot decompose the empty graph.")
    _check_size(g, max_n)
    strong = sorted(_strong_masks(g), key=lambda m: (-bin(m).count("1"), m))
    children: Dict[int, List[int]] = {m: [] for m in strong}
    placed: List[int] = []
    for m in strong:
        # Smallest already placed strict superset; the family is laminar, so it is unique.
        supersets = [p for p in placed if p & m == m and p != m]
        if supersets:
            parent = min(supersets, key=lambda p: bin(p).count("1"))
            children[parent].append(m)
        placed.append(m)

    def lowest(m: int) -> int:
        return (m & -m).bit_length()

    def make(m: int) -> MDNode:
        if bin(m).count("1") == 1:
            return MDNode.leaf(g.labels(m)[0])
        kids = sorted(children[m], key=lowest)
        kind = _classify(quotient_graph(g, [g.labels(c) for c in kids]))
        return MDNode(kind, [make(c) for c in kids])

    tree = MDTree(make(strong[0]))
    log.debug(f"Decomposed {g!r}: {tree.to_text()}")
    return tree


def _nontrivial_module(q: Graph) -> Optional[List[str]]:
    """Smallest nontrivial module of a graph, None if there is none."""
    nontrivial = [
        m for m in _module_masks(q) if 1 < bin(int(m)).count("1") < len(q)
    ]
    if not nontrivial:
        return None
    best = min(nontrivial, key=lambda m: (bin(int(m)).count("1"), int(m)))
    return q.labels(int(best))


def validate_tree(g: Graph, t: MDTree, max_n: Optional[int] = None) -> List[Violation]:
    """
    Check a claimed decomposition tree against the graph.

    Parameters
    ----------
    g : Graph
        The graph.
    t : MDTree
        The claimed tree, children in any order.
    max_n : int, optional
        The oracle size limit for prime-quotient checks.

    Returns
    -------
    List[Violation]
        Empty iff ``t`` equals ``build_md_tree(g)`` up to child permutation. Violations come in pre-order of the
        offending nodes.

    Raises
    ------
    ValueError
        If a leaf label is not a vertex of ``g``.
    """
    leaves = t.leaves()
    unknown = sorted(set(leaves) - set(g.vertices))
    if unknown:
        raise ValueError(f"Tree leaves {unknown} are not vertices of the graph.")
    _check_size(g, max_n)
    violations: List[Violation] = []

    missing = [v for v in g.vertices if v not in leaves]
    repeated = [v for v in g.vertices if leaves.count(v) > 1]
    if missing or repeated:
        violations.append(
            Violation(
                ViolationCode.LEAVES_NOT_V,
                frozenset(g.vertices),
                missing + repeated,
                f"tree leaves do not list every vertex exactly once "
                f"(missing: {','.join(missing) or '-'}; repeated: {','.join(repeated) or '-'})",
            )
        )

    for node in t.iter_nodes():
        if node.is_leaf:
            continue
        leafset = node.leafset
        if len(node.children) < 2:
            violations.append(
                Violation(
                    ViolationCode.ARITY,
                    leafset,
                    [],
                    f"{node.kind.value} node has {len(node.children)} child(ren), at least 2 required",
                )
            )
        witness = find_distinguisher(g, leafset)
        if witness is not None:
            v, x, y = witness
            violations.append(
                Violation(
                    ViolationCode.NOT_A_MODULE,
                    leafset,
                    [v, x, y],
                    f"{v} is adjacent to {x} but not to {y}",
                )
            )
        for child in node.children:
            if node.kind in DEGENERATE_KINDS and child.kind is node.kind:
                violations.append(
                    Violation(
                        ViolationCode.NOT_MAXIMAL,
                        child.leafset,
                        [],
                        f"{child.kind.value} node is a child of a {node.kind.value} node",
                    )
                )
        if len(node.children) < 2:
            continue
        representatives = g.sorted_labels(
            g.sorted_labels(child.leaves())[0] for child in node.children
        )
        pairs = [
            (x, y)
            for i, x in enumerate(representatives)
            for y in representatives[i + 1 :]
        ]
        if node.kind is NodeKind.SERIES:
            bad = [(x, y) for x, y in pairs if not g.adjacent(x, y)]
            if bad:
                x, y = bad[0]
                violations.append(
                    Violation(
                        ViolationCode.WRONG_KIND,
                        leafset,
                        [x, y],
                        f"series node quotient is not complete: {x} and {y} are not adjacent",
                    )
                )
        elif node.kind is NodeKind.PARALLEL:
            bad = [(x, y) for x, y in pairs if g.adjacent(x, y)]
            if bad:
                x, y = bad[0]
                violations.append(
                    Violation(
                        ViolationCode.WRONG_KIND,
                        leafset,
                        [x, y],
                        f"parallel node quotient is not edgeless: {x} and {y} are adjacent",
                    )
                )
        else:
            quotient = induced_subgraph(g, representatives)
            shape = _classify(quotient)
            witness_module = (
                _nontrivial_module(quotient) if shape is NodeKind.PRIME else None
            )
            if shape is not NodeKind.PRIME:
                violations.append(
                    Violation(
                        ViolationCode.WRONG_KIND,
                        leafset,
                        [],
                        f"prime node quotient is {shape.value}",
                    )
                )
            elif witness_module is not None:
                violations.append(
                    Violation(
                        ViolationCode.WRONG_KIND,
                        leafset,
                        witness_module,
                        f"prime node quotient has the nontrivial module {quotient.render_set(witness_module)}",
                    )
                )
    if violations:
        log.debug(f"Tree {t.to_text()} has {len(violations)} violation(s).")
    return violations


def dual_check(g: Graph, max_n: Optional[int] = None) -> bool:
    """
    Check that the complement's tree is the graph's tree with series and parallel swapped.

    Raises
    ------
    SizeLimitError
        If ``g`` has more vertices than the oracle limit.
    """
    if len(g) == 0:
        return True
    direct = build_md_tree(g, max_n).swap_degenerate_kinds()
    dual = build_md_tree(complement(g), max_n)
    same = direct.canonical(g).to_text() == dual.canonical(g).to_text()
    if not same:
        log.warning(
            f"Duality fails for {g!r}: {direct.to_text()} vs {dual.to_text()}."
        )
    return same
