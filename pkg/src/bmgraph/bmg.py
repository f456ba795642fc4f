"""Forward construction tree -> best match graph, plus oracle and simulator.

``bmg_of_tree`` is the production path: one lca-depth row per leaf, then a
per-color maximum (the last common ancestors of a fixed leaf form a chain,
so the deepest one is the closest).  ``bmg_oracle`` re-derives the same graph
straight from the defining quantifier with naive root-path lca, independent
of the Euler-tour machinery.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .digraph import ColoredDigraph, ColoredGraph, symmetric_part
from .errors import GraphError
from .tree import LeafColoredTree, Topology

SHAPES = ("binary", "multifurcating")


def bmg_of_tree(tree: LeafColoredTree) -> ColoredDigraph:
    """Best match digraph of a leaf-colored tree in O(n^2)."""
    labs = tree.leaf_labels
    colors = tree.colors
    groups: dict[str, np.ndarray] = {
        c: np.asarray([i for i, lab in enumerate(labs) if colors[lab] == c], dtype=np.int64)
        for c in tree.color_universe
    }
    arcs: list[tuple[str, str]] = []
    for i, x in enumerate(labs):
        row = tree.leaf_lca_depth_row(i)
        cx = colors[x]
        for c, members in groups.items():
            if c == cx:
                continue
            depths = row[members]
            best = depths.max()
            for j in members[depths == best]:
                arcs.append((x, labs[int(j)]))
    return ColoredDigraph(dict(colors), arcs)


def bmg_oracle(tree: LeafColoredTree) -> ColoredDigraph:
    """Definition-level reconstruction: check every (x, y, y') explicitly.

    The ancestor order along a fixed leaf's root path is its path position,
    and lca is the last shared node of two root paths.  No data is shared
    with :func:`bmg_of_tree` beyond the parent array.
    """
    parent = tree.parent
    labs = tree.leaf_labels
    colors = tree.colors
    paths: dict[str, list[int]] = {}
    for lab in labs:
        v = tree.leaf_node(lab)
        path = [v]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        paths[lab] = path[::-1]  # root first

    def lca_pos(x: str, y: str) -> int:
        """Position on x's root path of lca(x, y); larger means closer to x."""
        px, py = paths[x], paths[y]
        k = 0
        while k < len(px) and k < len(py) and px[k] == py[k]:
            k += 1
        return k - 1

    arcs = []
    for x in labs:
        for y in labs:
            if y == x or colors[y] == colors[x]:
                continue
            here = lca_pos(x, y)
            if all(
                here >= lca_pos(x, other)
                for other in labs
                if colors[other] == colors[y]
            ):
                arcs.append((x, y))
    return ColoredDigraph(dict(colors), arcs)


def rbmg_of_tree(tree: LeafColoredTree) -> ColoredGraph:
    """Reciprocal best matches: the symmetric part of the best match digraph."""
    return symmetric_part(bmg_of_tree(tree))


@dataclass(frozen=True)
class SimulationConfig:
    """Reproducible random scenario: tree shape, coloring, and seed."""

    leaf_count: int
    color_count: int
    seed: int
    shape: str = "multifurcating"
    contraction_probability: float = field(default=0.2, repr=False)

    def __post_init__(self) -> None:
        if self.leaf_count < 2:
            raise GraphError("simulation needs at least 2 leaves")
        if self.color_count < 1:
            raise GraphError("simulation needs at least 1 color")
        if self.color_count > self.leaf_count:
            raise GraphError("more colors than leaves cannot be surjective")
        if self.shape not in SHAPES:
            raise GraphError(f"unknown shape {self.shape!r}; pick one of {SHAPES}")


def simulate(cfg: SimulationConfig) -> tuple[LeafColoredTree, ColoredDigraph]:
    """Grow a random leaf-colored tree and return it with its best match graph."""
    rng = random.Random(cfg.seed)
    children = _grow_yule_shape(cfg.leaf_count, rng)
    n = cfg.leaf_count
    width = len(str(n))
    names = [f"v{i:0{width}d}" for i in range(1, n + 1)]
    topo = _named_topology(children, names)
    cwidth = len(str(cfg.color_count))
    color_names = [f"c{k:0{cwidth}d}" for k in range(1, cfg.color_count + 1)]
    while True:
        assignment = [rng.randrange(cfg.color_count) for _ in range(n)]
        if len(set(assignment)) == cfg.color_count:
            break
    colors = {names[i]: color_names[assignment[i]] for i in range(n)}
    tree = LeafColoredTree(topo, colors)
    if cfg.shape == "multifurcating":
        doomed = [e for e in tree.inner_edges() if rng.random() < cfg.contraction_probability]
        if doomed:
            tree = tree.contract_edges(doomed)
    return tree, bmg_of_tree(tree)


def _grow_yule_shape(n: int, rng: random.Random) -> dict[int, list[int]]:
    """Repeatedly split a uniformly chosen leaf until ``n`` leaves exist."""
    children: dict[int, list[int]] = {0: []}
    leaves = [0]
    next_id = 1
    for _ in range(n - 1):
        pick = rng.randrange(len(leaves))
        v = leaves[pick]
        a, b = next_id, next_id + 1
        next_id += 2
        children[v] = [a, b]
        children[a] = []
        children[b] = []
        leaves[pick] = a
        leaves.append(b)
    return children

def _named_topology(children: dict[int, list[int]], names: list[str]) -> Topology:
    """Nested-tuple topology with leaves named in depth-first order."""
    order: list[int] = []
    stack = [0]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(children[v]))
    rep: dict[int, Topology] = {}
    it = iter(names)
    for v in order:
        if not children[v]:
            rep[v] = next(it)
    for v in reversed(order):
        if children[v]:
            rep[v] = tuple(rep[c] for c in children[v])
    return rep[0]
