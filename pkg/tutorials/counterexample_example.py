"""Reproduce the refinement counterexample on the nine-vertex fixture and shrink it."""
import logging

from mdtool import build_md_tree, lemma4_check, minimize, run_paper_fixture, set_logger_config
from mdtool.fixtures import FIXTURE_ORDER, FIXTURE_PIVOT, fixture_graph

if __name__ == "__main__":
    set_logger_config(level=logging.INFO)

    g = fixture_graph()
    print(f"Decomposition: {build_md_tree(g).to_text()}")

    # Process f, the only vertex right of the pivot, first.
    report = lemma4_check(g, FIXTURE_PIVOT, FIXTURE_ORDER)
    print(report.render(trace=True, exact=True), end="")

    # Different orders can lead to different outcomes.
    for x in g.vertices:
        outcome = lemma4_check(g, x)
        print(f"pivot {x}: {'violated' if outcome.violated else 'ok'}")

    smaller = minimize(run_paper_fixture())
    print(f"Minimized to {len(smaller.graph)} vertices:")
    print(smaller.to_json())
