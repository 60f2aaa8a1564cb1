"""
Search harness sweeping graphs, pivots, and processing orders through the refinement check.

A run is described by a ``SearchSpec``. Instances are numbered; planted instances come first, then the exhaustive
enumeration or the seeded random graphs. Instance ``k`` is evaluated on rank ``k mod size`` of the communicator and
the findings are merged in instance order, so the output does not depend on the number of ranks.
"""
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import deepdiff
from mpi4py import MPI

from ._globals import EXHAUSTIVE_MAX_N, PERMUTATION_MAX_N
from .fixtures import FIXTURE_ORDER, FIXTURE_PIVOT, fixture_graph
from .graph import Graph, VertexSet, default_labels, induced_subgraph, parse_graph, serialize_graph
from .oracle import SizeLimitError
from .refinement import Lemma4Report, lemma4_check
from .utils import WordStream

log = logging.getLogger(__name__)  # Get logger instance.

MODES = ("exhaustive", "random")
PIVOT_CHOICES = ("all", "first")
ORDER_CHOICES = ("default", "all-permutations")


@dataclass(frozen=True)
class PlantedInstance:
    """
    A fixed graph injected at the start of a search.

    Attributes
    ----------
    graph : Graph
        The graph.
    pivot : str, optional
        A fixed pivot. Default is the search's pivot selection.
    order : Tuple[str, ...], optional
        A fixed processing order. Default is the search's order selection.
    """

    graph: Graph
    pivot: Optional[str] = None
    order: Optional[Tuple[str, ...]] = None


def fixture_instance() -> PlantedInstance:
    """The nine-vertex fixture with pivot i and the f-first processing order."""
    return PlantedInstance(fixture_graph(), FIXTURE_PIVOT, FIXTURE_ORDER)


@dataclass(frozen=True)
class SearchSpec:
    """
    Description of a search run.

    Attributes
    ----------
    mode : str
        ``exhaustive`` enumerates every labeled graph on ``n_min`` to ``n_max`` vertices; ``random`` draws
        ``instance_count`` graphs.
    n_min, n_max : int
        The vertex-count range, inclusive.
    instance_count : int
        The number of random graphs.
    seed : int
        The search seed, a non-negative 64-bit integer.
    pivots : str
        ``all`` tries every vertex as pivot, ``first`` only the first vertex.
    orders : str
        ``default`` uses the initial forest's leaf order, ``all-permutations`` every processing order.
    edge_probability : float
        The probability of each edge in random mode.
    planted : Tuple[PlantedInstance, ...]
        Instances evaluated before the generated ones.
    """

    mode: str = "random"
    n_min: int = 1
    n_max: int = 8
    instance_count: int = 100
    seed: int = 0
    pivots: str = "all"
    orders: str = "default"
    edge_probability: float = 0.5
    planted: Tuple[PlantedInstance, ...] = field(default_factory=tuple)

    def validate(self) -> None:
        """
        Check the spec against its domains and size caps.

        Raises
        ------
        ValueError
            If a field is out of its domain.
        SizeLimitError
            If exhaustive mode exceeds ``EXHAUSTIVE_MAX_N`` vertices or all-permutations orders exceed
            ``PERMUTATION_MAX_N`` vertices.
        """
        if self.mode not in MODES:
            raise ValueError(f"Unknown search mode {self.mode!r}.")
        if self.pivots not in PIVOT_CHOICES:
            raise ValueError(f"Unknown pivot selection {self.pivots!r}.")
        if self.orders not in ORDER_CHOICES:
            raise ValueError(f"Unknown order selection {self.orders!r}.")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError(f"Invalid vertex-count range {self.n_min}..{self.n_max}.")
        if self.instance_count < 0:
            raise ValueError(f"Instance count must be non-negative, got {self.instance_count}.")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"Seed must be a 64-bit non-negative integer, got {self.seed}.")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError(f"Edge probability must lie in [0, 1], got {self.edge_probability}.")
        if self.mode == "exhaustive" and self.n_max > EXHAUSTIVE_MAX_N:
            raise SizeLimitError(
                f"Exhaustive mode is limited to {EXHAUSTIVE_MAX_N} vertices, got {self.n_max}."
            )
        if self.orders == "all-permutations":
            largest = max([self.n_max] + [len(p.graph) for p in self.planted if p.order is None])
            if largest > PERMUTATION_MAX_N:
                raise SizeLimitError(
                    f"All-permutations orders are limited to {PERMUTATION_MAX_N} vertices, got {largest}."
                )


@dataclass
class Finding:
    """
    A graph, pivot, and processing order for which refinement leaves a marked child under a strong module.

    Attributes
    ----------
    graph : Graph
        The graph.
    pivot : str
        The pivot.
    order : Tuple[str, ...]
        The processing order, always explicit so the finding replays on its own.
    violations : List[FrozenSet[str]]
        The strong modules not containing the pivot whose forest node has a marked child.
    seed : int
        The seed of the run that found it.
    instance_index : int
        The instance it was found in.
    """

    graph: Graph
    pivot: str
    order: Tuple[str, ...]
    violations: List[VertexSet]
    seed: int = 0
    instance_index: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": serialize_graph(self.graph),
            "pivot": self.pivot,
            "order": list(self.order),
            "violations": [self.graph.sorted_labels(m) for m in self.violations],
            "seed": self.seed,
            "instance_index": self.instance_index,
        }

    def to_json(self) -> str:
        """One JSON line without trailing newline."""
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, line: str) -> "Finding":
        """
        Read a finding from one JSON line.

        Raises
        ------
        ValueError
            If the line is not a JSON object with the finding fields.
        """
        try:
            data = json.loads(line)
            return cls(
                graph=parse_graph(data["graph"]),
                pivot=data["pivot"],
                order=tuple(data["order"]),
                violations=[frozenset(m) for m in data["violations"]],
                seed=int(data["seed"]),
                instance_index=int(data["instance_index"]),
            )
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ValueError(f"Invalid finding line: {e}")

    def replay(self, max_n: Optional[int] = None) -> Lemma4Report:
        return lemma4_check(self.graph, self.pivot, self.order, max_n)

    def reproduces(self, max_n: Optional[int] = None) -> bool:
        """Whether replaying yields exactly the recorded violations."""
        report = self.replay(max_n)
        diff = deepdiff.DeepDiff(
            [self.graph.sorted_labels(m) for m in self.violations],
            [self.graph.sorted_labels(m) for m in report.violations_necessary],
        )
        if diff:
            log.warning(f"Finding {self.instance_index} does not reproduce: {diff}")
        return not diff


def read_findings(text: str) -> List[Finding]:
    """Read JSON-lines findings, skipping blank lines."""
    return [Finding.from_json(line) for line in text.splitlines() if line.strip()]


def random_graph(stream: WordStream, n_min: int, n_max: int, edge_probability: float = 0.5) -> Graph:
    """Draw a vertex count, then each pair in canonical order independently with the given probability."""
    n = stream.integer(n_min, n_max)
    labels = default_labels(n)
    return Graph(labels, [pair for pair in combinations(labels, 2) if stream.bernoulli(edge_probability)])


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices; bit ``j`` of the code selects the ``j``-th pair."""
    labels = default_labels(n)
    pairs = list(combinations(labels, 2))
    for code in range(1 << len(pairs)):
        yield Graph(labels, [pair for j, pair in enumerate(pairs) if code >> j & 1])


class Falsifier:
    """
    Parallel search for refinement counterexamples.

    Attributes
    ----------
    spec : SearchSpec
        The search description.
    comm : MPI.Comm
        The communicator instances are spread over.
    max_n : int | None
        The oracle size limit.

    Methods
    -------
    search()
        Evaluate all instances and gather the findings.
    summarize()
        Log and return finding counts per vertex count.
    """

    def __init__(
        self,
        spec: SearchSpec,
        comm: MPI.Comm = MPI.COMM_WORLD,
        max_n: Optional[int] = None,
    ) -> None:
        """
        Initialize the falsifier.

        Parameters
        ----------
        spec : SearchSpec
            The search description.
        comm : MPI.Comm, optional
            The communicator. Default is ``MPI.COMM_WORLD``.
        max_n : int, optional
            The oracle size limit.

        Raises
        ------
        ValueError
            If the spec is invalid.
        SizeLimitError
            If the spec exceeds a cap.
        """
        spec.validate()
        self.spec = spec
        self.comm = comm
        self.max_n = max_n

    def _generated(self, start: int) -> Iterator[Tuple[int, Graph]]:
        spec = self.spec
        if spec.mode == "exhaustive":
            k = start
            for n in range(spec.n_min, spec.n_max + 1):
                for g in labeled_graphs(n):
                    yield k, g
                    k += 1
        else:
            for j in range(spec.instance_count):
                k = start + j
                if k % self.comm.size != self.comm.rank:
                    continue  # Drawing is per instance, so skipped instances cost nothing.
                yield k, random_graph(
                    WordStream(spec.seed, k), spec.n_min, spec.n_max, spec.edge_probability
                )

    def instances(self) -> Iterator[Tuple[int, PlantedInstance]]:
        """Instances assigned to this rank, in index order."""
        for k, planted in enumerate(self.spec.planted):
            if k % self.comm.size == self.comm.rank:
                yield k, planted
        for k, g in self._generated(len(self.spec.planted)):
            if k % self.comm.size == self.comm.rank:
                yield k, PlantedInstance(g)

    def _runs(self, instance: PlantedInstance) -> Iterator[Tuple[int, str, int, Optional[Sequence[str]]]]:
        g = instance.graph
        if instance.pivot is not None:
            pivots = [instance.pivot]
        elif self.spec.pivots == "first":
            pivots = list(g.vertices)[:1]
        else:
            pivots = list(g.vertices)
        for x in pivots:
            if instance.order is not None:
                orders: Sequence[Optional[Sequence[str]]] = [instance.order]
            elif self.spec.orders == "all-permutations":
                orders = list(permutations([v for v in g.vertices if v != x]))
            else:
                orders = [None]
            for order_index, order in enumerate(orders):
                yield g.index(x), x, order_index, order

    def evaluate(self, k: int, instance: PlantedInstance) -> List[Tuple[Tuple[int, int, int], Finding]]:
        """All findings of one instance with their merge keys."""
        found = []
        for position, x, order_index, order in self._runs(instance):
            report = lemma4_check(instance.graph, x, order, self.max_n)
            if report.violated:
                finding = Finding(
                    graph=instance.graph,
                    pivot=x,
                    order=report.order,
                    violations=report.violations_necessary,
                    seed=self.spec.seed,
                    instance_index=k,
                )
                log.debug(f"Finding: {finding.to_json()}")
                found.append(((k, position, order_index), finding))
        return found

    def search(self) -> List[Finding]:
        """
        Evaluate the instances of this rank and gather the findings of all ranks.

        Returns
        -------
        List[Finding]
            All findings, ordered by instance index, pivot position, and order index.
        """
        local = []
        evaluated = 0
        for k, instance in self.instances():
            local.extend(self.evaluate(k, instance))
            evaluated += 1
        log.debug(f"Rank {self.comm.rank}: {evaluated} instances, {len(local)} findings.")
        gathered = self.comm.allgather(local)
        merged = sorted((item for part in gathered for item in part), key=lambda item: item[0])
        return [finding for _, finding in merged]

    def summarize(self, findings: Sequence[Finding]) -> Dict[int, int]:
        """
        Count findings per vertex count and log the counts on rank 0.

        Returns
        -------
        Dict[int, int]
            Number of findings by vertex count.
        """
        counts = dict(sorted(Counter(len(f.graph) for f in findings).items()))
        if self.comm.rank == 0:
            log.info(
                "###########\n# SUMMARY #\n###########\n"
                f"Mode {self.spec.mode}, seed {self.spec.seed}: {len(findings)} finding(s).\n"
                + "".join(f"n={n}: {c}\n" for n, c in counts.items())
            )
        return counts


def search(spec: SearchSpec, comm: MPI.Comm = MPI.COMM_WORLD, max_n: Optional[int] = None) -> List[Finding]:
    """Run a search; see ``Falsifier.search``."""
    return Falsifier(spec, comm, max_n).search()


def run_paper_fixture(max_n: Optional[int] = None) -> Finding:
    """
    Check the nine-vertex fixture with pivot i and the f-first order.

    Returns
    -------
    Finding
        The finding, its only violation being ``{b,c,e,g,h}``.
    """
    report = lemma4_check(fixture_graph(), FIXTURE_PIVOT, FIXTURE_ORDER, max_n)
    return Finding(
        graph=report.graph,
        pivot=report.pivot,
        order=report.order,
        violations=report.violations_necessary,
    )


def minimize(finding: Finding, max_n: Optional[int] = None) -> Finding:
    """
    Shrink a finding by deleting single vertices while some strong module still has a marked child.

    Vertices are tried in vertex order, never the pivot; after each successful deletion the scan restarts. The
    processing order keeps its relative order.

    Parameters
    ----------
    finding : Finding
        A violating finding.
    max_n : int, optional
        The oracle size limit.

    Returns
    -------
    Finding
        A still-violating finding from which no single deletion keeps a violation.

    Raises
    ------
    ValueError
        If the finding does not violate.
    """
    report = finding.replay(max_n)
    if not report.violated:
        raise ValueError("Finding does not violate, nothing to minimize.")
    graph, order = finding.graph, list(finding.order)
    shrinking = True
    while shrinking:
        shrinking = False
        for v in graph.vertices:
            if v == finding.pivot:
                continue
            candidate = induced_subgraph(graph, [w for w in graph.vertices if w != v])
            candidate_order = [w for w in order if w != v]
            candidate_report = lemma4_check(candidate, finding.pivot, candidate_order, max_n)
            if candidate_report.violated:
                log.debug(f"Deleted {v}: {len(candidate)} vertices left.")
                graph, order, report = candidate, candidate_order, candidate_report
                shrinking = True
                break
    return Finding(
        graph=graph,
        pivot=finding.pivot,
        order=tuple(order),
        violations=report.violations_necessary,
        seed=finding.seed,
        instance_index=finding.instance_index,
    )
