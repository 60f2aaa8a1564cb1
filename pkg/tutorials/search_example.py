"""Parallel random search for refinement counterexamples; run with ``mpirun -n <ranks>``."""
import argparse
import logging

from mpi4py import MPI

from mdtool import Falsifier, SearchSpec, minimize, set_logger_config


def parse_arguments() -> argparse.Namespace:
    """
    Set up argument parser for the search example.

    Returns
    -------
    Namespace
        The namespace of all parsed arguments.
    """
    parser = argparse.ArgumentParser(
        prog="Random counterexample search",
        description="Sweep seeded random graphs, all pivots, and default orders through the refinement check.",
    )
    parser.add_argument("--n_min", type=int, default=4)  # Smallest vertex count
    parser.add_argument("--n_max", type=int, default=8)  # Largest vertex count
    parser.add_argument("--instances", type=int, default=500)  # Number of random graphs
    parser.add_argument("--seed", type=int, default=0)  # Search seed
    parser.add_argument("--edge_probability", type=float, default=0.5)
    parser.add_argument("--logging_level", type=int, default=logging.INFO)
    return parser.parse_args()


if __name__ == "__main__":
    comm = MPI.COMM_WORLD
    config = parse_arguments()

    set_logger_config(
        level=config.logging_level,  # Logging level
        log_rank=True,  # Prepend MPI rank to logging messages.
        colors=True,  # Use colors.
    )

    spec = SearchSpec(
        mode="random",
        n_min=config.n_min,
        n_max=config.n_max,
        instance_count=config.instances,
        seed=config.seed,
        edge_probability=config.edge_probability,
    )
    falsifier = Falsifier(spec, comm)
    findings = falsifier.search()  # Every rank ends up with all findings.
    falsifier.summarize(findings)

    if comm.rank == 0 and findings:
        smallest = min((minimize(f) for f in findings), key=lambda f: len(f.graph))
        print(f"Smallest counterexample after minimization ({len(smallest.graph)} vertices):")
        print(smallest.to_json())
