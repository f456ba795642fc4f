"""Reciprocal best match graphs: the two-color structural necessary condition.

Every two-colored reciprocal best match graph is a disjoint union of complete
bipartite graphs.  The converse fails, so a pass here proves nothing; a fail
is a definite rejection.
"""

from __future__ import annotations

from .digraph import ColoredGraph
from .errors import GraphError
from .verdicts import CheckResult


def check_2crbmg_necessary(graph: ColoredGraph) -> CheckResult:
    """Check that every component with an edge is complete bipartite across
    its two color sides; edge-less components pass vacuously."""
    if len(graph.color_ids) != 2:
        raise GraphError("check expects a two-colored undirected graph")
    for i, j in graph.edges():
        if graph.color_of[i] == graph.color_of[j]:
            raise GraphError(
                f"same-color edge {graph.vertex_ids[i]!r}-{graph.vertex_ids[j]!r}"
            )
    for comp in graph.components():
        edge_count = sum(len(graph.adj[v]) for v in comp) // 2
        if edge_count == 0:
            continue
        side = sum(1 for v in comp if graph.color_of[v] == 0)
        other = len(comp) - side
        if edge_count != side * other:
            witness = tuple(graph.vertex_ids[v] for v in comp)
            return CheckResult(False, "not-complete-bipartite", witness)
    return CheckResult(True)
