import itertools
import random

import pytest

from maxleaf.graphs import Graph, GraphError, graph_leaves, suppress, vertices_ge3
from maxleaf.generators import flowerbed, g7, necklace, necklace_ring, q3
from maxleaf.solver import (
    CapacityError,
    ForcedLeafQuery,
    achievable_leaves,
    exact_max_leaves,
    forced_leaf_feasible,
    forced_leaf_tree,
    fpt_decide,
    tree_leaf_count,
    verify_spanning_tree,
)

from conftest import brute_max_leaves, random_connected, spanning_trees, tree_leaves


# -- exact oracle ------------------------------------------------------------------


def test_exact_g7():
    best, tree = exact_max_leaves(g7())
    assert best == 4
    assert verify_spanning_tree(g7(), tree) and tree_leaf_count(tree) == 4


def test_exact_q3():
    assert exact_max_leaves(q3())[0] == 4


def test_exact_ring3():
    g = necklace_ring(3)
    assert g.n == 12
    assert exact_max_leaves(g)[0] == 5  # n/4 + 2


def test_exact_k2():
    assert exact_max_leaves(Graph(edges=[(1, 2)]))[0] == 2


def test_exact_capacity_cap():
    g = Graph(edges=[(i, i + 1) for i in range(1, 40)])
    with pytest.raises(CapacityError):
        exact_max_leaves(g)
    assert exact_max_leaves(g, cap=50)[0] == 2


def test_exact_requires_connected():
    with pytest.raises(GraphError):
        exact_max_leaves(Graph(edges=[(1, 2), (3, 4)]))


def test_exact_matches_brute_force(rng):
    for _ in range(50):
        g = random_connected(rng.randint(2, 8), rng.randint(0, 4), rng)
        mine, tree = exact_max_leaves(g)
        assert mine == brute_max_leaves(g)
        assert verify_spanning_tree(g, tree)
        assert tree_leaf_count(tree) == mine


# -- forced-leaf machinery ---------------------------------------------------------------


def theta_host():
    """Two hubs joined by a direct edge, a 1-subdivided path and a
    5-subdivided path; suppression gives parallel costs 0, 1, 2."""
    g = Graph(edges=[(1, 2), (1, 3), (3, 2)])
    for a, b in [(1, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 2)]:
        g.add_edge(a, b)
    return g


def test_empty_forced_set_is_feasible():
    g = theta_host()
    s = suppress(g)
    assert forced_leaf_feasible(ForcedLeafQuery(s, frozenset(), len(graph_leaves(g))))


def test_costly_edge_between_forced_pair_infeasible():
    g = theta_host()
    s = suppress(g)
    q = ForcedLeafQuery(s, frozenset({1, 2}), 0)
    assert not forced_leaf_feasible(q)


def test_cut_vertex_cannot_be_forced():
    # 1 is a cut vertex of the suppressed graph
    g = Graph(edges=[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)])
    g.add_edge(2, 9)
    g.add_edge(3, 9)
    g.add_edge(4, 8)
    g.add_edge(5, 8)
    s = suppress(g)
    assert not forced_leaf_feasible(ForcedLeafQuery(s, frozenset({1}), 0))


def test_loop_at_forced_vertex_infeasible():
    g = Graph(edges=[(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 6), (6, 4)])
    s = suppress(g)  # loops at 1 and 4
    assert forced_leaf_feasible(ForcedLeafQuery(s, frozenset(), 0))
    assert not forced_leaf_feasible(ForcedLeafQuery(s, frozenset({1}), 0))


def test_achievable_theta_counts_path_gains():
    g = theta_host()
    s = suppress(g)
    value = achievable_leaves(ForcedLeafQuery(s, frozenset(), len(graph_leaves(g))))
    # tree keeps the free edge; the other two paths donate 1 and 2 leaves
    assert value == 3 == brute_max_leaves(g)


def test_achievable_loop_contributes_two():
    # figure-eight: two suppressed cycles hanging on one anchor
    g = Graph(edges=[(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)])
    s = suppress(g)
    value = achievable_leaves(ForcedLeafQuery(s, frozenset(), 0))
    assert value == 4 == brute_max_leaves(g)


def test_forced_tree_realizes_value(rng):
    built = 0
    for _ in range(60):
        g = random_connected(rng.randint(4, 9), rng.randint(0, 3), rng)
        if not any(g.degree(v) >= 3 for v in g.vertices):
            continue
        s = suppress(g)
        big = sorted(vertices_ge3(g))
        hl = len(graph_leaves(g))
        for r in range(0, min(3, len(big)) + 1):
            for combo in itertools.combinations(big, r):
                q = ForcedLeafQuery(s, frozenset(combo), hl)
                value = achievable_leaves(q)
                if value is None:
                    continue
                tree = forced_leaf_tree(g, s, frozenset(combo))
                assert verify_spanning_tree(g, tree)
                leaves = tree_leaves(tree)
                assert set(combo) <= leaves
                assert len(combo) + len(leaves - set(big)) == value
                built += 1
    assert built >= 50


def test_achievable_matches_exhaustive_forced_oracle(rng):
    checked = 0
    for _ in range(60):
        n = rng.randint(4, 9)
        g = random_connected(n, rng.randint(0, 3), rng)
        if not any(g.degree(v) >= 3 for v in g.vertices):
            continue
        s = suppress(g)
        big = set(vertices_ge3(g))
        hl = len(graph_leaves(g))
        best: dict[frozenset, int] = {}
        for combo in spanning_trees(g):
            ls = tree_leaves(combo)
            small = len(ls - big)
            for r in range(0, min(4, len(ls & big)) + 1):
                for L in itertools.combinations(sorted(ls & big), r):
                    key = frozenset(L)
                    if best.get(key, -1) < len(L) + small:
                        best[key] = len(L) + small
        for r in range(0, min(4, len(big)) + 1):
            for L in itertools.combinations(sorted(big), r):
                q = ForcedLeafQuery(s, frozenset(L), hl)
                assert achievable_leaves(q) == best.get(frozenset(L)), (sorted(g.edges()), L)
                checked += 1
    assert checked >= 200


def test_achievable_invariant_under_tie_breaks(rng):
    # permuting the edge list must not change the value (all minimum trees
    # give equal gain totals)
    for _ in range(30):
        g = random_connected(rng.randint(5, 9), rng.randint(1, 4), rng)
        if not any(g.degree(v) >= 3 for v in g.vertices):
            continue
        s = suppress(g)
        hl = len(graph_leaves(g))
        value = achievable_leaves(ForcedLeafQuery(s, frozenset(), hl))
        for _ in range(4):
            shuffled = list(s.sedges)
            rng.shuffle(shuffled)
            s2 = type(s)(s.vertices, shuffled)
            assert achievable_leaves(ForcedLeafQuery(s2, frozenset(), hl)) == value


# -- the decision procedure ----------------------------------------------------------------


def test_k_at_most_two_is_always_yes(rng):
    for _ in range(10):
        g = random_connected(rng.randint(2, 8), rng.randint(0, 3), rng)
        assert fpt_decide(g, 2).is_yes
        assert fpt_decide(g, 1).is_yes


def test_q3_threshold():
    assert fpt_decide(q3(), 4).is_yes
    assert not fpt_decide(q3(), 5).is_yes


def test_flowerbed_threshold():
    r2 = flowerbed(2)
    yes = fpt_decide(r2, 10, want_witness=True)
    assert yes.is_yes
    assert verify_spanning_tree(r2, yes.witness)
    assert tree_leaf_count(yes.witness) >= 10
    assert not fpt_decide(r2, 11).is_yes


def test_bad_arguments():
    with pytest.raises(GraphError):
        fpt_decide(q3(), 0)
    with pytest.raises(GraphError):
        fpt_decide(Graph(edges=[(1, 2), (3, 4)]), 2)


def test_agrees_with_oracle_on_fuzz(rng):
    for _ in range(60):
        g = random_connected(rng.randint(2, 10), rng.randint(0, 4), rng)
        opt, _ = exact_max_leaves(g)
        for k in range(1, g.n):
            assert fpt_decide(g, k).is_yes == (opt >= k), (sorted(g.edges()), k)


def test_witnesses_verify(rng):
    for _ in range(25):
        g = random_connected(rng.randint(3, 9), rng.randint(0, 4), rng)
        opt, _ = exact_max_leaves(g)
        v = fpt_decide(g, opt, want_witness=True)
        assert v.is_yes
        assert verify_spanning_tree(g, v.witness)
        assert tree_leaf_count(v.witness) >= opt


def test_stats_subset_counter_bound(rng):
    from math import comb

    exercised = 0
    for _ in range(40):
        g = random_connected(rng.randint(5, 10), rng.randint(0, 4), rng)
        for k in range(3, g.n):
            v = fpt_decide(g, k)
            k2 = v.stats.k_after_preprocess
            if v.stats.subsets_enumerated:
                exercised += 1
                assert v.stats.subsets_enumerated <= max(1, k2) * comb(3 * max(1, k2), max(1, k2))
    assert exercised >= 10


def test_path_and_cycle_say_no_above_two():
    path = Graph(edges=[(i, i + 1) for i in range(1, 7)])
    assert not fpt_decide(path, 3).is_yes
    cyc = Graph(edges=[(1, 2), (2, 3), (3, 4), (4, 1)])
    assert not fpt_decide(cyc, 3).is_yes


def test_worker_count_does_not_change_results(rng):
    for _ in range(8):
        g = random_connected(rng.randint(5, 10), rng.randint(0, 4), rng)
        for k in (3, 4, max(2, g.n - 3)):
            a = fpt_decide(g, k, workers=1)
            b = fpt_decide(g, k, workers=3)
            assert a.answer == b.answer
            assert a.stats.subsets_enumerated == b.stats.subsets_enumerated


def test_necklace_instances():
    g = necklace(2)
    g.add_edge(1, 7)
    opt, _ = exact_max_leaves(g)
    assert opt == 4
    assert fpt_decide(g, 4).is_yes and not fpt_decide(g, 5).is_yes
