"""Recognition of n-colored best match graphs and their least resolved trees.

Pipeline: reject same-color arcs, split into weakly connected components and
require equal color sets, then per component either (a) recognize every
two-color induced subgraph, take the unique least resolved tree per color
pair, and feed all pair trees to a supertree BUILD, or (b) feed the union of
the pairwise informative triples to BUILD directly.  Acceptance is never
inferred from intermediate successes: the candidate tree must reproduce the
input graph arc for arc.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .bmg import bmg_of_tree
from .digraph import (
    ColoredDigraph,
    connected_components,
    induced_subgraph,
    subgraph_on,
    thinness_partition,
)
from .errors import GraphError
from .tree import LeafColoredTree, Topology
from .triples import TripleSet, build, build_from_trees, informative_triples
from .two_color import lrt_via_hierarchy
from .verdicts import Rejection

ROUTES = ("pairwise-lrt", "informative-direct")


@dataclass
class RecognitionReport:
    """Everything the recognizer decided, with per-stage wall times."""

    accepted: bool
    route: str
    stage: str | None = None
    witness: object = None
    lrt: LeafColoredTree | None = None
    components: tuple[tuple[str, ...], ...] = ()
    pair_verdicts: dict[tuple[int, tuple[str, str]], str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    note: str | None = None

    @property
    def rejection(self) -> Rejection | None:
        return None if self.accepted else Rejection(self.stage or "unknown", self.witness)


def recognize_ncbmg(graph: ColoredDigraph, route: str = "pairwise-lrt") -> RecognitionReport:
    if route not in ROUTES:
        raise GraphError(f"unknown route {route!r}; pick one of {ROUTES}")
    report = RecognitionReport(accepted=False, route=route)
    clock = time.perf_counter

    t0 = clock()
    bad = graph.same_color_arc()
    if bad is not None:
        i, j = bad
        report.stage = "same-color-arc"
        report.witness = (graph.vertex_ids[i], graph.vertex_ids[j])
        return report
    comps = connected_components(graph)
    report.components = tuple(tuple(graph.vertex_ids[v] for v in comp) for comp in comps)
    color_sets = [
        frozenset(graph.color_name(v) for v in comp) for comp in comps
    ]
    for k in range(1, len(color_sets)):
        if color_sets[k] != color_sets[0]:
            report.stage = "component-color-mismatch"
            report.witness = (report.components[0], report.components[k])
            return report
    report.timings["structure"] = clock() - t0

    if len(graph.color_ids) == 1:
        # no arcs can exist; any tree explains the graph, star is least resolved
        topo: Topology = (
            graph.vertex_ids[0] if len(graph) == 1 else tuple(graph.vertex_ids)
        )
        report.lrt = LeafColoredTree(topo, graph.colors_as_dict())
        report.accepted = True
        report.note = "single-color: edge-less graph, star tree"
        return report

    t0 = clock()
    comp_topologies: list[Topology] = []
    for ci, comp in enumerate(comps):
        sub = graph if len(comps) == 1 else subgraph_on(graph, comp)
        outcome = _recognize_component(sub, ci, route, report)
        if isinstance(outcome, Rejection):
            report.stage = outcome.stage
            report.witness = outcome.witness
            return report
        comp_topologies.append(outcome)
    report.timings["components"] = clock() - t0

    t0 = clock()
    topology = comp_topologies[0] if len(comp_topologies) == 1 else tuple(comp_topologies)
    candidate = LeafColoredTree(topology, graph.colors_as_dict())
    if bmg_of_tree(candidate) != graph:
        report.stage = "graph-mismatch"
        report.witness = candidate
        return report
    report.timings["gate"] = clock() - t0
    report.accepted = True
    report.lrt = candidate
    return report


def _recognize_component(
    sub: ColoredDigraph, ci: int, route: str, report: RecognitionReport
) -> Topology | Rejection:
    pairs = list(itertools.combinations(sub.color_ids, 2))
    pair_trees: list[LeafColoredTree] = []
    pooled: TripleSet | None = None
    for s, t in pairs:
        gst = induced_subgraph(sub, {s, t})
        if route == "informative-direct":
            found = informative_triples(gst)
            pooled = found if pooled is None else pooled.union(found)
            report.pair_verdicts[(ci, (s, t))] = f"{len(found)} informative triples"
            continue
        tree = _pair_lrt(gst)
        if isinstance(tree, Rejection):
            report.pair_verdicts[(ci, (s, t))] = f"failed: {tree.stage}"
            return Rejection("2cbmg-failure", (ci, (s, t), tree.witness))
        report.pair_verdicts[(ci, (s, t))] = "2-cBMG"
        pair_trees.append(tree)

    if route == "pairwise-lrt":
        topo = build_from_trees(pair_trees, sub.vertex_ids)
    else:
        assert pooled is not None
        topo = build(pooled, sub.vertex_ids)
    if topo is None:
        return Rejection("triples-inconsistent", tuple(sub.vertex_ids))
    candidate = LeafColoredTree(topo, sub.colors_as_dict())
    if bmg_of_tree(candidate) != sub:
        return Rejection("graph-mismatch", (ci, candidate))
    return topo


def _pair_lrt(gst: ColoredDigraph) -> LeafColoredTree | Rejection:
    """Unique least resolved tree of a (possibly disconnected) two-colored
    graph: per-component trees, joined under a pair root if needed."""
    for v in range(len(gst)):
        if not gst.out_adj[v]:
            return Rejection("sink-vertex", gst.vertex_ids[v])
    comps = connected_components(gst)
    topos: list[Topology] = []
    for comp in comps:
        piece = gst if len(comps) == 1 else subgraph_on(gst, comp)
        tree = lrt_via_hierarchy(piece)
        if isinstance(tree, Rejection):
            return tree
        topos.append(tree.topology())
    topology = topos[0] if len(topos) == 1 else tuple(topos)
    return LeafColoredTree(topology, gst.colors_as_dict())


def class_roots_per_color(
    tree: LeafColoredTree, graph: ColoredDigraph
) -> dict[int, set[str]]:
    """Map tree node -> colors s such that some class has its color-s root there.

    Verifies along the way that each color-s neighborhood is exactly the
    color-s leaf set of the subtree below that root (a property of every
    explaining tree).
    """
    part = thinness_partition(graph)
    roots_at: dict[int, set[str]] = {}
    for a in range(len(part)):
        class_nodes = [tree.leaf_node(graph.vertex_ids[v]) for v in part.classes[a]]
        out = part.vertex_out(a)
        for s in graph.color_ids:
            targets = [v for v in out if graph.color_name(v) == s]
            if not targets:
                continue
            target_nodes = [tree.leaf_node(graph.vertex_ids[v]) for v in targets]
            rho = tree.lca_set(class_nodes + target_nodes)
            below = {
                tree.label[w]
                for w in tree.leaves_under(rho)
                if graph.color_name(graph.index_of[tree.label[w]]) == s
            }
            assert below == {graph.vertex_ids[v] for v in targets}, (
                "color neighborhood is not a subtree slice; tree cannot explain graph"
            )
            roots_at.setdefault(rho, set()).add(s)
    return roots_at


def redundant_edges_n(tree: LeafColoredTree, graph: ColoredDigraph) -> frozenset[tuple[int, int]]:
    """Inner edges contractible without changing the explained graph: the
    lower end is no color-s class root for any color s seen outside the
    lower subtree but inside the upper one."""
    if bmg_of_tree(tree) != graph:
        raise GraphError("tree does not explain the given graph")
    roots_at = class_roots_per_color(tree, graph)
    cindex = {c: k for k, c in enumerate(tree.color_universe)}
    redundant = []
    for u, v in tree.inner_edges():
        sibling_mask = 0
        for c in tree.children[u]:
            if c != v:
                sibling_mask |= tree.color_mask(c)
        marked = roots_at.get(v, ())
        if not any(sibling_mask >> cindex[s] & 1 for s in marked):
            redundant.append((u, v))
    return frozenset(redundant)
