"""
Command-line front end.

Every subcommand reads graph and tree files (``-`` meaning stdin), writes its payload to stdout, and logs to stderr.
Exit statuses: 0 success, 1 violation found, 2 usage or format error, 3 size limit exceeded.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from mpi4py import MPI

from ._globals import EXIT_OK, EXIT_SIZE_LIMIT, EXIT_USAGE, EXIT_VIOLATION
from .falsifier import (
    MODES,
    ORDER_CHOICES,
    PIVOT_CHOICES,
    Falsifier,
    Finding,
    SearchSpec,
    fixture_instance,
    minimize,
    read_findings,
    run_paper_fixture,
)
from .graph import Graph, complement, parse_graph, serialize_graph
from .oracle import SizeLimitError, build_md_tree, dual_check, validate_tree
from .refinement import lemma4_check, refine_all, render_trace
from .tree import parse_tree
from .utils import set_logger_config

log = logging.getLogger(__name__)  # Get logger instance.

REPLAY_FIXTURE = "paper-fixture"


def read_text(path: str) -> str:
    """Read a file argument, ``-`` meaning stdin."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def read_graph(path: str) -> Graph:
    return parse_graph(read_text(path))


def parse_order(value: Optional[str]) -> Optional[List[str]]:
    """Split a comma-separated processing order; None stays None."""
    if value is None:
        return None
    return [label.strip() for label in value.split(",") if label.strip()]


def log_level(value: str) -> int:
    """Accept a logging level by name or number."""
    if value.isdigit():
        return int(value)
    level = logging.getLevelName(value.upper())
    if not isinstance(level, int):
        raise argparse.ArgumentTypeError(f"Unknown log level {value!r}.")
    return level


def cmd_decompose(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    tree = build_md_tree(g, args.max_n).canonical(g)
    if args.format == "dot":
        sys.stdout.write(tree.to_dot())
    elif args.format == "json":
        sys.stdout.write(tree.to_json() + "\n")
    else:
        sys.stdout.write(tree.to_text() + "\n")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    tree = parse_tree(read_text(args.tree))
    violations = validate_tree(g, tree, args.max_n)
    if not violations:
        sys.stdout.write("OK\n")
        return EXIT_OK
    sys.stdout.write("".join(v.render(g) + "\n" for v in violations))
    return EXIT_VIOLATION


def cmd_complement(args: argparse.Namespace) -> int:
    sys.stdout.write(serialize_graph(complement(read_graph(args.graph))))
    return EXIT_OK


def cmd_refine(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    forest, trace = refine_all(g, args.pivot, parse_order(args.order), args.max_n)
    sys.stdout.write(render_trace(trace, g) + f"forest {forest.render()}\n")
    return EXIT_OK


def cmd_lemma4(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    report = lemma4_check(g, args.pivot, parse_order(args.order), args.max_n)
    sys.stdout.write(report.render(trace=args.trace, exact=args.exact))
    return EXIT_VIOLATION if report.violated else EXIT_OK


def cmd_dual_check(args: argparse.Namespace) -> int:
    if dual_check(read_graph(args.graph), args.max_n):
        sys.stdout.write("OK\n")
        return EXIT_OK
    sys.stdout.write("FAIL\n")
    return EXIT_VIOLATION


def _replayed(source: str, max_n: Optional[int]) -> List[Finding]:
    if source == REPLAY_FIXTURE:
        return [run_paper_fixture(max_n)]
    findings = read_findings(read_text(source))
    stale = [finding.instance_index for finding in findings if not finding.reproduces(max_n)]
    if stale:
        raise ValueError(f"Findings {stale} in {source} do not reproduce.")
    return findings


def cmd_falsify(args: argparse.Namespace) -> int:
    comm = MPI.COMM_WORLD
    if args.replay is not None:
        findings = _replayed(args.replay, args.max_n)
    else:
        spec = SearchSpec(
            mode=args.mode,
            n_min=args.n_min,
            n_max=args.n_max,
            instance_count=args.instances,
            seed=args.seed,
            pivots=args.pivots,
            orders=args.orders,
            edge_probability=args.edge_probability,
            planted=(fixture_instance(),) if args.plant_fixture else (),
        )
        falsifier = Falsifier(spec, comm, args.max_n)
        findings = falsifier.search()
        falsifier.summarize(findings)
    if args.minimize:
        findings = [minimize(finding, args.max_n) for finding in findings]
    if comm.rank == 0:
        sys.stdout.write("".join(finding.to_json() + "\n" for finding in findings))
    return EXIT_VIOLATION if findings else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Set up the argument parser with one sub-parser per subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level", type=log_level, default=logging.WARNING, help="Logging level, name or number. Default WARNING."
    )
    common.add_argument("--log-file", type=str, default=None, help="Also write the log to this file.")
    common.add_argument(
        "--max-n", type=int, default=None, help="Oracle vertex limit. Default from MDTOOL_MAX_N, else 16."
    )

    parser = argparse.ArgumentParser(
        prog="mdtool",
        description="Modular decomposition oracle and refinement counterexample tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="Print the canonical decomposition tree.")
    p.add_argument("graph", help="Graph file, - for stdin.")
    p.add_argument("--format", choices=["tree", "dot", "json"], default="tree", help="Output format. Default tree.")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate", parents=[common], help="Check a claimed tree against the oracle.")
    p.add_argument("graph", help="Graph file, - for stdin.")
    p.add_argument("tree", help="Tree file, - for stdin.")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("complement", parents=[common], help="Print the complement graph file.")
    p.add_argument("graph", help="Graph file, - for stdin.")
    p.set_defaults(func=cmd_complement)

    for name, func, text in (
        ("refine", cmd_refine, "Print the refinement trace and final forest."),
        ("lemma4", cmd_lemma4, "Check unmarked forest nodes against strong modules avoiding the pivot."),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("graph", help="Graph file, - for stdin.")
        p.add_argument("--pivot", required=True, help="The pivot vertex.")
        p.add_argument(
            "--order", default=None, help="Comma-separated processing order. Default is the forest's leaf order."
        )
        p.set_defaults(func=func)
        if name == "lemma4":
            p.add_argument("--trace", action="store_true", help="Also print the event trace and final forest.")
            p.add_argument(
                "--exact", action="store_true", help="Also print exact-mode mismatches (does not affect exit status)."
            )

    p = sub.add_parser("dual-check", parents=[common], help="Check the complement duality of the oracle tree.")
    p.add_argument("graph", help="Graph file, - for stdin.")
    p.set_defaults(func=cmd_dual_check)

    p = sub.add_parser("falsify", parents=[common], help="Search for refinement counterexamples.")
    p.add_argument("--mode", choices=MODES, default="random", help="Search mode. Default random.")
    p.add_argument("--n-min", type=int, default=1, help="Smallest vertex count. Default 1.")
    p.add_argument("--n-max", type=int, default=8, help="Largest vertex count. Default 8.")
    p.add_argument("--instances", type=int, default=100, help="Random instances. Default 100.")
    p.add_argument("--seed", type=int, default=0, help="Search seed. Default 0.")
    p.add_argument("--pivots", choices=PIVOT_CHOICES, default="all", help="Pivot selection. Default all.")
    p.add_argument("--orders", choices=ORDER_CHOICES, default="default", help="Order selection. Default default.")
    p.add_argument(
        "--edge-probability", type=float, default=0.5, help="Edge probability of random graphs. Default 0.5."
    )
    p.add_argument("--plant-fixture", action="store_true", help="Evaluate the nine-vertex fixture first.")
    p.add_argument(
        "--replay",
        default=None,
        help=f"Replay findings instead of searching: {REPLAY_FIXTURE} or a JSON-lines file.",
    )
    p.add_argument("--minimize", action="store_true", help="Shrink each finding by single-vertex deletion.")
    p.set_defaults(func=cmd_falsify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Parameters
    ----------
    argv : Sequence[str], optional
        The arguments without the program name. Default is ``sys.argv[1:]``.

    Returns
    -------
    int
        The exit status.
    """
    args = build_parser().parse_args(argv)
    set_logger_config(level=args.log_level, log_file=args.log_file, colors=sys.stderr.isatty())
    try:
        return args.func(args)
    except SizeLimitError as e:
        log.error(str(e))
        return EXIT_SIZE_LIMIT
    except (ValueError, OSError) as e:
        log.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
