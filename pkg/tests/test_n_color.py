"""Full n-color recognition pipeline and n-color redundant edges."""

import itertools
import random

import pytest

from bmgraph import (
    ColoredDigraph,
    GraphError,
    LeafColoredTree,
    bmg_of_tree,
    connected_components,
    induced_subgraph,
    lrt_via_hierarchy,
    recognize_ncbmg,
    redundant_edges_2,
    redundant_edges_n,
    subgraph_on,
    thinness_partition,
)
from cases import counterex_sym_graph, three_class_scenario_tree, smallest_counterexample
from util import arc_ids, connected_scenario, random_binary_refinement, random_scenario


def test_three_class_scenario():
    tree = three_class_scenario_tree()
    graph = bmg_of_tree(tree)
    part = thinness_partition(graph)
    nontrivial = {part.class_ids(a) for a in range(len(part)) if len(part.classes[a]) > 1}
    assert nontrivial == {("a2", "a3", "a4"), ("b3", "b4"), ("c3", "c4")}
    report = recognize_ncbmg(graph)
    direct = recognize_ncbmg(graph, route="informative-direct")
    assert report.accepted and direct.accepted
    assert report.lrt == direct.lrt
    assert bmg_of_tree(report.lrt) == graph
    assert tree.displays(report.lrt)


def test_counterex_sym_is_rejected_after_all_pair_checks_pass():
    graph = counterex_sym_graph()
    for s, t in itertools.combinations(graph.color_ids, 2):
        sub = induced_subgraph(graph, {s, t})
        for comp_result in [recognize_ncbmg(sub)]:
            assert comp_result.accepted
    report = recognize_ncbmg(graph)
    assert not report.accepted
    assert report.stage in {"triples-inconsistent", "graph-mismatch"}
    direct = recognize_ncbmg(graph, route="informative-direct")
    assert not direct.accepted
    assert direct.stage in {"triples-inconsistent", "graph-mismatch"}


def test_rejection_stages():
    same = ColoredDigraph({"a": "r", "b": "r"}, [("a", "b")])
    assert recognize_ncbmg(same).stage == "same-color-arc"

    # components {a,b,e} and {c,d} carry different color sets
    unequal = ColoredDigraph(
        {"a": "r", "b": "b", "c": "r", "d": "b", "e": "g"},
        [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c"), ("e", "a"), ("a", "e"), ("b", "e"), ("e", "b")],
    )
    assert recognize_ncbmg(unequal).stage == "component-color-mismatch"

    fig2 = smallest_counterexample()
    rep = recognize_ncbmg(fig2)
    assert rep.stage == "2cbmg-failure"
    assert recognize_ncbmg(fig2, route="informative-direct").stage in {
        "triples-inconsistent",
        "graph-mismatch",
    }


def test_vertex_missing_a_foreign_color_is_rejected():
    # c sees no green partner, so the {b,g} induced subgraph has a sink
    g = ColoredDigraph(
        {"a": "r", "b": "b", "c": "b", "e": "g"},
        [("a", "b"), ("b", "a"), ("c", "a"), ("a", "e"), ("e", "a"), ("b", "e"), ("e", "b")],
    )
    rep = recognize_ncbmg(g)
    assert not rep.accepted
    assert rep.stage == "2cbmg-failure"


def test_single_color_graph_gets_star_with_note():
    g = ColoredDigraph({"a": "r", "b": "r", "c": "r"})
    report = recognize_ncbmg(g)
    assert report.accepted
    assert report.note and "single-color" in report.note
    assert report.lrt.newick() == "(a,b,c);"
    single = ColoredDigraph({"a": "r"})
    rep = recognize_ncbmg(single)
    assert rep.accepted and rep.lrt.newick() == "a;"


def test_round_trip_on_simulated_ncbmgs():
    for seed in range(60):
        tree, graph = random_scenario(seed, max_leaves=18)
        report = recognize_ncbmg(graph)
        assert report.accepted, (seed, report.stage)
        assert bmg_of_tree(report.lrt) == graph
        assert tree.displays(report.lrt)


def test_routes_agree_on_simulated_ncbmgs():
    for seed in range(40):
        _, graph = random_scenario(seed, max_leaves=15)
        a = recognize_ncbmg(graph)
        b = recognize_ncbmg(graph, route="informative-direct")
        assert a.accepted and b.accepted
        assert a.lrt == b.lrt


def test_pairwise_lrts_are_displayed_by_final_tree():
    for seed in range(25):
        _, graph = random_scenario(seed, max_leaves=14)
        report = recognize_ncbmg(graph)
        assert report.accepted
        lrt = report.lrt
        for s, t in itertools.combinations(graph.color_ids, 2):
            sub = induced_subgraph(graph, {s, t})
            for comp in connected_components(sub):
                piece = subgraph_on(sub, comp)
                pair_lrt = lrt_via_hierarchy(piece)
                assert isinstance(pair_lrt, LeafColoredTree)
                assert lrt.displays(pair_lrt)


def test_three_distinct_colors_restrict_to_complete_triangle():
    rng = random.Random(11)
    for seed in range(15):
        tree, graph = random_scenario(seed, max_leaves=14, max_colors=5)
        if len(graph.color_ids) < 3:
            continue
        labels = list(tree.leaf_labels)
        for _ in range(8):
            picks = rng.sample(labels, 3)
            if len({tree.colors[p] for p in picks}) != 3:
                continue
            small = bmg_of_tree(tree.restrict(picks))
            assert len(list(small.arcs())) == 6


def test_disconnected_union_accepted_iff_same_color_sets():
    t1, g1 = connected_scenario(1, colors=2, max_leaves=8)
    t2, g2 = connected_scenario(2, colors=2, max_leaves=8)
    # same color sets: union is a BMG
    colors = {f"L{v}": g1.color_name(i) for i, v in enumerate(g1.vertex_ids)}
    colors.update({f"R{v}": g2.color_name(i) for i, v in enumerate(g2.vertex_ids)})
    arcs = [(f"L{a}", f"L{b}") for a, b in arc_ids(g1)]
    arcs += [(f"R{a}", f"R{b}") for a, b in arc_ids(g2)]
    union = ColoredDigraph(colors, arcs)
    report = recognize_ncbmg(union)
    assert report.accepted
    assert bmg_of_tree(report.lrt) == union
    # rename one side's colors: rejected
    recolors = dict(colors)
    for i, v in enumerate(g2.vertex_ids):
        recolors[f"R{v}"] = "other-" + g2.color_name(i)
    broken = ColoredDigraph(recolors, arcs)
    assert recognize_ncbmg(broken).stage == "component-color-mismatch"


def test_report_carries_components_pairs_and_timings():
    _, graph = random_scenario(3, max_leaves=12, max_colors=3)
    report = recognize_ncbmg(graph)
    assert report.accepted
    assert report.components
    assert report.pair_verdicts
    assert "structure" in report.timings and "gate" in report.timings


def test_redundant_edges_n_empty_on_lrt():
    for seed in range(40):
        _, graph = random_scenario(seed, max_leaves=14)
        report = recognize_ncbmg(graph)
        assert redundant_edges_n(report.lrt, graph) == frozenset()


def test_redundant_edges_n_from_source_tree_reaches_lrt():
    for seed in range(40):
        tree, graph = random_scenario(seed, max_leaves=14)
        report = recognize_ncbmg(graph)
        edges = redundant_edges_n(tree, graph)
        assert tree.contract_edges(edges) == report.lrt


def test_redundant_edges_n_matches_two_color_version():
    for seed in range(30):
        tree, graph = connected_scenario(seed)
        assert redundant_edges_n(tree, graph) == redundant_edges_2(tree, graph)


def test_lrt_uniqueness_single_contractions_change_graph():
    for seed in range(25):
        _, graph = random_scenario(seed, max_leaves=12)
        report = recognize_ncbmg(graph)
        for edge in report.lrt.inner_edges():
            contracted = report.lrt.contract_edges([edge])
            assert bmg_of_tree(contracted) != graph


def test_binary_refinements_contract_back():
    rng = random.Random(23)
    hits = 0
    for seed in range(40):
        _, graph = random_scenario(seed, max_leaves=12)
        report = recognize_ncbmg(graph)
        refined = random_binary_refinement(report.lrt, rng)
        if refined == report.lrt or bmg_of_tree(refined) != graph:
            continue
        hits += 1
        assert refined.contract_edges(redundant_edges_n(refined, graph)) == report.lrt
    assert hits


def test_redundant_edges_n_rejects_non_explaining_tree():
    tree, _ = random_scenario(1, max_leaves=8)
    _, graph = random_scenario(2, max_leaves=9)
    if bmg_of_tree(tree) != graph:
        with pytest.raises(GraphError):
            redundant_edges_n(tree, graph)


def test_unknown_route_is_an_error():
    _, graph = random_scenario(0, max_leaves=6)
    with pytest.raises(GraphError):
        recognize_ncbmg(graph, route="nope")
