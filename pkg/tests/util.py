"""Shared test helpers: exhaustive enumerations and seeded random scenarios."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from bmgraph import (
    ColoredDigraph,
    LeafColoredTree,
    SimulationConfig,
    connected_components,
    simulate,
)


def set_partitions(items: list):
    """All partitions of ``items`` into non-empty blocks."""
    if len(items) == 1:
        yield [items]
        return
    head, tail = items[0], items[1:]
    for part in set_partitions(tail):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1 :]
        yield [[head]] + part


@lru_cache(maxsize=None)
def all_topologies(leaves: tuple[str, ...]) -> tuple:
    """Every rooted phylogenetic tree shape on the given labeled leaves."""
    if len(leaves) == 1:
        return (leaves[0],)
    out = []
    seen = set()
    for part in set_partitions(list(leaves)):
        if len(part) < 2:
            continue
        key = tuple(sorted(tuple(sorted(b)) for b in part))
        if key in seen:
            continue
        seen.add(key)
        options = [all_topologies(tuple(sorted(b))) for b in part]
        for combo in itertools.product(*options):
            out.append(tuple(combo))
    return tuple(out)


def color_partitions(n: int, max_colors: int):
    """Descending integer partitions of n into at most ``max_colors`` parts."""

    def rec(remaining, cap, parts):
        if remaining == 0:
            yield tuple(parts)
            return
        if len(parts) == max_colors:
            return
        for take in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - take, take, parts + [take])

    yield from rec(n, n, [])


def coloring_from_partition(leaves: tuple[str, ...], partition: tuple[int, ...]) -> dict[str, str]:
    colors = {}
    pos = 0
    for k, size in enumerate(partition):
        for leaf in leaves[pos : pos + size]:
            colors[leaf] = f"c{k}"
        pos += size
    return colors


def random_scenario(seed: int, max_leaves: int = 40, max_colors: int = 6):
    """Deterministic random tree/graph pair with mixed shapes and sizes."""
    rng = random.Random(seed)
    n = rng.randint(2, max_leaves)
    k = rng.randint(2, min(max_colors, n))
    shape = "binary" if rng.random() < 0.5 else "multifurcating"
    return simulate(SimulationConfig(n, k, rng.getrandbits(48), shape=shape))


def connected_scenario(seed: int, colors: int = 2, max_leaves: int = 16):
    """Simulated tree whose best match graph is connected."""
    for attempt in itertools.count():
        rng = random.Random(seed * 1_000_003 + attempt)
        n = rng.randint(max(2, colors), max_leaves)
        tree, graph = simulate(
            SimulationConfig(n, colors, rng.getrandbits(48), shape="multifurcating")
        )
        if len(connected_components(graph)) == 1:
            return tree, graph


def random_binary_refinement(tree: LeafColoredTree, rng: random.Random) -> LeafColoredTree:
    """Resolve every multifurcation into random binary joins."""

    def go(topo):
        if isinstance(topo, str):
            return topo
        kids = [go(k) for k in topo]
        while len(kids) > 2:
            a = kids.pop(rng.randrange(len(kids)))
            b = kids.pop(rng.randrange(len(kids)))
            kids.append((a, b))
        return tuple(kids)

    return LeafColoredTree(go(tree.topology()), tree.colors)


def arc_ids(graph: ColoredDigraph) -> set[tuple[str, str]]:
    return {(graph.vertex_ids[i], graph.vertex_ids[j]) for i, j in graph.arcs()}
