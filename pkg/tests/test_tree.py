"""Tree structure: lca, restriction, contraction, display, triples."""

import random

import pytest

from bmgraph import LeafColoredTree, TreeError, build
from util import random_scenario

CHERRY = LeafColoredTree((("x", "y"), "z"), {"x": "r", "y": "b", "z": "b"})


def leafset(tree):
    return set(tree.leaf_labels)


def naive_lca(tree, u, v):
    """Root-path intersection, independent of the sparse table."""
    anc = []
    while u != -1:
        anc.append(u)
        u = tree.parent[u]
    seen = set(anc)
    while v not in seen:
        v = tree.parent[v]
    return v


def test_lca_identity_and_cherry():
    x, y, z = (CHERRY.leaf_node(l) for l in "xyz")
    assert CHERRY.lca(x, x) == x
    inner = CHERRY.parent[x]
    assert CHERRY.lca(x, y) == inner
    assert inner != CHERRY.root
    assert CHERRY.lca(x, z) == CHERRY.root
    with pytest.raises(TreeError):
        CHERRY.lca(0, 99)


def test_lca_matches_path_walking_oracle():
    for seed in range(25):
        tree, _ = random_scenario(seed, max_leaves=20)
        nodes = list(tree.nodes())
        rng = random.Random(seed)
        for _ in range(60):
            u, v = rng.choice(nodes), rng.choice(nodes)
            assert tree.lca(u, v) == naive_lca(tree, u, v)


def test_single_child_root_and_degree_two_suppression():
    t = LeafColoredTree(((("x", "y"),),), {"x": "r", "y": "b"})
    assert t.newick() == "(x,y);"
    assert t.root == 0 and len(t.children[t.root]) == 2


def test_restrict_identity_and_forced_cherry():
    assert CHERRY.restrict({"x", "y", "z"}) == CHERRY
    assert CHERRY.restrict({"x", "z"}).newick() == "(x,z);"
    with pytest.raises(TreeError):
        CHERRY.restrict(set())
    with pytest.raises(TreeError):
        CHERRY.restrict({"nope"})


def test_restrict_composes():
    for seed in range(15):
        tree, _ = random_scenario(seed, max_leaves=18)
        rng = random.Random(seed + 1)
        labels = list(tree.leaf_labels)
        big = set(rng.sample(labels, max(2, len(labels) * 2 // 3)))
        small = set(rng.sample(sorted(big), max(1, len(big) // 2)))
        assert tree.restrict(big).restrict(small) == tree.restrict(small)


def test_restrict_keeps_exactly_inner_triples():
    for seed in range(10):
        tree, _ = random_scenario(seed, max_leaves=12)
        rng = random.Random(seed + 2)
        labels = list(tree.leaf_labels)
        sub = set(rng.sample(labels, max(1, 2 * len(labels) // 3)))
        expected = {t for t in tree.triple_tuples() if {t[0], t[1], t[2]} <= sub}
        assert tree.restrict(sub).triple_tuples() == expected


def test_contract_nothing_and_forced_star():
    assert CHERRY.contract_edges([]) == CHERRY
    star = CHERRY.contract_edges(CHERRY.inner_edges())
    assert star.newick() == "(x,y,z);"
    leaf_edge = (CHERRY.parent[CHERRY.leaf_node("z")], CHERRY.leaf_node("z"))
    with pytest.raises(TreeError):
        CHERRY.contract_edges([leaf_edge])
    with pytest.raises(TreeError):
        CHERRY.contract_edges([(0, 57)])


def test_contract_preserves_leaves_and_phylogenetic_shape():
    for seed in range(15):
        tree, _ = random_scenario(seed, max_leaves=18)
        rng = random.Random(seed)
        chosen = [e for e in tree.inner_edges() if rng.random() < 0.5]
        smaller = tree.contract_edges(chosen)
        assert smaller.leaf_labels == tree.leaf_labels
        for v in smaller.inner_nodes():
            assert v == smaller.root or len(smaller.children[v]) >= 2


def test_contract_in_steps_equals_contract_at_once():
    for seed in range(15):
        tree, _ = random_scenario(seed, max_leaves=18)
        inner = tree.inner_edges()
        rng = random.Random(seed + 3)
        chosen = [e for e in inner if rng.random() < 0.5]
        if not chosen:
            continue
        cut = rng.randrange(len(chosen))
        first, second = chosen[:cut], chosen[cut:]
        stepwise = tree.contract_edges(first)
        # identify surviving edges by the leaf set below their lower end
        remap = {
            frozenset(stepwise.label[w] for w in stepwise.leaves_under(v)): (u, v)
            for u, v in stepwise.inner_edges()
        }
        second_mapped = [
            remap[frozenset(tree.label[w] for w in tree.leaves_under(v))]
            for _, v in second
        ]
        assert stepwise.contract_edges(second_mapped) == tree.contract_edges(chosen)


def test_displays_reflexive_and_star_cases():
    assert CHERRY.displays(CHERRY)
    star = LeafColoredTree(("x", "y", "z"), CHERRY.colors)
    assert CHERRY.displays(star) is False or star.triple_tuples() == set()
    # a star displays no proper binary resolution on >= 3 leaves
    assert not star.displays(CHERRY)
    assert CHERRY.displays(star)


def test_displays_requires_color_agreement():
    other = LeafColoredTree(("x", "y"), {"x": "b", "y": "b"})
    with pytest.raises(TreeError):
        CHERRY.displays(other)


def test_triples_of_star_and_cherry_and_caterpillar():
    star = LeafColoredTree(("x", "y", "z"), {"x": "r", "y": "b", "z": "b"})
    assert star.triple_tuples() == set()
    assert CHERRY.triple_tuples() == {("x", "y", "z")}
    cat = LeafColoredTree(
        ((("a", "b"), "c"), "d"), {"a": "r", "b": "b", "c": "r", "d": "b"}
    )
    assert cat.triple_tuples() == {
        ("a", "b", "c"),
        ("a", "b", "d"),
        ("a", "c", "d"),
        ("b", "c", "d"),
    }


def test_triples_match_distinguished_edges():
    for seed in range(10):
        tree, _ = random_scenario(seed, max_leaves=10)
        trips = tree.triple_tuples()
        for u, v in tree.inner_edges():
            below = [tree.label[w] for w in tree.leaves_under(v)]
            above = [
                tree.label[w]
                for w in tree.leaves_under(u)
                if tree.label[w] not in set(below)
            ]
            for x in below:
                for y in below:
                    if x < y:
                        for z in above:
                            nx, ny, nz = (tree.leaf_node(l) for l in (x, y, z))
                            if tree.lca(nx, ny) == v and tree.lca_set((nx, ny, nz)) == u:
                                assert (x, y, z) in trips


def test_build_reconstructs_trees_from_their_triples():
    for seed in range(40):
        tree, _ = random_scenario(seed, max_leaves=11)
        topo = build(tree.triples(), tree.leaf_labels)
        assert topo is not None
        assert LeafColoredTree(topo, tree.colors) == tree


def test_newick_round_trip():
    for seed in range(20):
        tree, _ = random_scenario(seed, max_leaves=15)
        again = LeafColoredTree.from_newick(tree.newick(), tree.colors)
        assert again == tree
