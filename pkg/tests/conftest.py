"""Shared helpers: independent brute-force oracles and random-graph builders.

The oracles here deliberately avoid the library's own algorithms so the two
sides of every comparison stay independent.
"""

from __future__ import annotations

import itertools
import random

import pytest

from maxleaf.graphs import Graph


# -- random instances ---------------------------------------------------------


def random_connected(n: int, extra_edges: int, rng: random.Random) -> Graph:
    g = Graph(vertices=range(1, n + 1))
    for v in range(2, n + 1):
        g.add_edge(v, rng.randint(1, v - 1))
    tries = 0
    while extra_edges > 0 and tries < 80:
        u, v = rng.sample(sorted(g.vertices), 2)
        tries += 1
        if not g.has_edge(u, v):
            g.add_edge(u, v)
            extra_edges -= 1
    return g


def random_multigraph(n: int, m: int, rng: random.Random) -> Graph:
    g = Graph(vertices=range(1, n + 1))
    for _ in range(m):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        g.add_edge(u, v)  # loops and parallels welcome
    return g


def plant_diamond(g: Graph, rng: random.Random) -> Graph:
    cands = [v for v in g.vertices if g.degree(v) >= 1]
    u, v = rng.sample(cands, 2)
    base = max(g.vertices)
    i1, i2 = base + 1, base + 2
    for e in [(u, i1), (u, i2), (v, i1), (v, i2), (i1, i2)]:
        g.add_edge(*e)
    return g


def plant_blossom(g: Graph, rng: random.Random) -> Graph:
    cands = [v for v in g.vertices if g.degree(v) >= 1]
    c1, c2 = rng.sample(cands, 2)
    base = max(g.vertices)
    b, a1, a2, a3, a4 = base + 1, base + 2, base + 3, base + 4, base + 5
    for e in [
        (b, a1), (b, a2), (b, a3), (b, a4),
        (a1, a2), (a3, a4),
        (c1, a1), (c1, a4), (c2, a2), (c2, a3),
    ]:
        g.add_edge(*e)
    return g


# -- naive connectivity oracles -------------------------------------------------


def naive_components(g: Graph) -> list[set[int]]:
    seen: set[int] = set()
    out = []
    for s in sorted(g.vertices):
        if s in seen:
            continue
        comp = {s}
        frontier = [s]
        while frontier:
            x = frontier.pop()
            for y in g.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    frontier.append(y)
        seen |= comp
        out.append(comp)
    return out


def naive_bridges_and_cuts(g: Graph) -> tuple[set[tuple[int, int]], set[int]]:
    """O(m * (n + m)) recomputation by deletion."""
    base = len(naive_components(g))
    bridges = set()
    for u, v in sorted(set(g.edges())):
        if u == v or g.multiplicity(u, v) > 1:
            continue
        h = g.copy()
        h.remove_edge(u, v)
        if len(naive_components(h)) > base:
            bridges.add((u, v))
    cuts = set()
    for v in sorted(g.vertices):
        h = g.copy()
        h.remove_vertex(v)
        if h.n and len(naive_components(h)) > base:
            cuts.add(v)
    return bridges, cuts


# -- spanning tree enumeration ---------------------------------------------------


def spanning_trees(g: Graph):
    """All spanning trees as edge tuples (distinct edges only)."""
    edges = sorted(set(g.edges()))
    vs = sorted(g.vertices)
    n = len(vs)
    for combo in itertools.combinations(edges, n - 1):
        parent = {v: v for v in vs}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for u, v in combo:
            if u == v:
                ok = False
                break
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            yield combo


def tree_leaves(combo) -> set[int]:
    deg: dict[int, int] = {}
    for u, v in combo:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return {x for x, d in deg.items() if d == 1}


def brute_max_leaves(g: Graph) -> int:
    if g.n == 2:
        return 2
    return max(len(tree_leaves(t)) for t in spanning_trees(g))


# -- brute-force pattern scans ----------------------------------------------------


def brute_cubic_diamonds(g: Graph) -> set[frozenset[int]]:
    out = set()
    for quad in itertools.combinations(sorted(g.vertices), 4):
        if any(g.degree(v) != 3 for v in quad):
            continue
        sub = [(u, v) for u, v in itertools.combinations(quad, 2) if g.has_edge(u, v)]
        if len(sub) != 5:
            continue
        out.add(frozenset(quad))
    return out


def brute_2blossoms(g: Graph) -> set[frozenset[int]]:
    """Role-assignment scan over all 7-subsets."""
    out = set()
    need = [
        ("b", "a1"), ("b", "a2"), ("b", "a3"), ("b", "a4"),
        ("a1", "a2"), ("a3", "a4"),
        ("c1", "a1"), ("c1", "a4"), ("c2", "a2"), ("c2", "a3"),
    ]
    names = ["b", "a1", "a2", "a3", "a4", "c1", "c2"]
    for seven in itertools.combinations(sorted(g.vertices), 7):
        for perm in itertools.permutations(seven):
            roles = dict(zip(names, perm))
            if any(not g.has_edge(roles[x], roles[y]) for x, y in need):
                continue
            if g.degree(roles["b"]) != 4:
                continue
            if any(g.degree(roles[a]) != 3 for a in ("a1", "a2", "a3", "a4")):
                continue
            if g.degree(roles["c1"]) != 3 or g.degree(roles["c2"]) != 3:
                continue
            out.add(frozenset(seven))
            break
    return out


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
