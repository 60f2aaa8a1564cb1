# -*- coding: utf-8 -*-
from pkg_resources import DistributionNotFound, get_distribution

try:
    # Change here if project is renamed and does not equal the package name
    dist_name = __name__
    __version__ = get_distribution(dist_name).version
except DistributionNotFound:
    __version__ = "unknown"
finally:
    del get_distribution, DistributionNotFound

from .graph import Graph, GraphFormatError, complement, induced_subgraph, parse_graph, serialize_graph
from .tree import MDNode, MDTree, NodeKind, parse_tree
from .oracle import (
    SizeLimitError,
    Violation,
    ViolationCode,
    all_modules,
    build_md_tree,
    dual_check,
    is_module,
    strong_modules,
    validate_tree,
)
from .refinement import (
    Direction,
    Lemma4Report,
    OrderedForest,
    active_edges,
    build_ordered_forest,
    lemma4_check,
    refine_all,
    refine_by_set,
)
from .falsifier import Falsifier, Finding, SearchSpec, minimize, run_paper_fixture, search
from .utils import WordStream, get_max_n, set_logger_config

__all__ = [
    "Graph",
    "GraphFormatError",
    "complement",
    "induced_subgraph",
    "parse_graph",
    "serialize_graph",
    "MDNode",
    "MDTree",
    "NodeKind",
    "parse_tree",
    "SizeLimitError",
    "Violation",
    "ViolationCode",
    "all_modules",
    "build_md_tree",
    "dual_check",
    "is_module",
    "strong_modules",
    "validate_tree",
    "Direction",
    "Lemma4Report",
    "OrderedForest",
    "active_edges",
    "build_ordered_forest",
    "lemma4_check",
    "refine_all",
    "refine_by_set",
    "Falsifier",
    "Finding",
    "SearchSpec",
    "minimize",
    "run_paper_fixture",
    "search",
    "WordStream",
    "get_max_n",
    "set_logger_config",
]
