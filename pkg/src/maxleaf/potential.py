"""Leaf-potential machinery: exact potential evaluation of a subgraph, vertex
expansion, conservative augmentation moves, and a greedy extend-until-spanning
spanning-tree heuristic.

All potential arithmetic is exact: values are half-integers stored as their
doubled integer. The heuristic makes no bound promise; callers compare the
achieved leaf count against the target ratio themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, GraphError, SubgraphF, is_connected, is_goober, n_ge3
from .patterns import check_invariant


@dataclass(frozen=True)
class PotentialReport:
    """Exact snapshot of a subgraph's potential ingredients."""

    leaves: int
    dead_leaves: int
    nongoob: int
    cc: int
    twice_value: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)


@dataclass(frozen=True)
class DeltaTriple:
    """Change triple (nongoober, leaves, dead leaves) and its worth."""

    d_nongoob: int
    d_leaves: int
    d_dead: int

    @property
    def twice_value(self) -> int:
        return 5 * self.d_leaves + self.d_dead - 2 * self.d_nongoob

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)


def leaf_potential(g: Graph, f: SubgraphF) -> PotentialReport:
    """2.5*leaves + 0.5*dead - nongoober - 6*components, exactly. Goober
    status is judged against the whole host graph."""
    leaves = len(f.leaves)
    dead = len(f.dead_leaves)
    nongoob = sum(1 for v in f.vertices if not is_goober(g, v))
    twice = 5 * leaves + dead - 2 * nongoob - 12 * f.cc
    return PotentialReport(leaves, dead, nongoob, f.cc, twice)


def delta_between(g: Graph, before: SubgraphF, after: SubgraphF) -> DeltaTriple:
    pb, pa = leaf_potential(g, before), leaf_potential(g, after)
    return DeltaTriple(pa.nongoob - pb.nongoob, pa.leaves - pb.leaves, pa.dead_leaves - pb.dead_leaves)


def expand(f: SubgraphF, v: int) -> SubgraphF:
    """Grow the subgraph by the closed neighborhood of v: every neighbor not
    already present is added as a leaf hanging off v. Expanding a vertex
    outside the subgraph starts a new component."""
    g = f.host
    if not g.has_vertex(v):
        raise GraphError(f"no vertex {v}")
    fresh = [w for w in g.neighbors(v) if w not in f.vertices and w != v]
    adds = set(fresh)
    if v not in f.vertices:
        adds.add(v)
    if not adds:
        return f
    return f.with_additions(adds, [(v, w) for w in fresh])


def expand_many(f: SubgraphF, vs: list[int]) -> SubgraphF:
    for v in vs:
        f = expand(f, v)
    return f


def try_augment(g: Graph, f: SubgraphF) -> SubgraphF | None:
    """One conservative extension: attach an adjacent goober, expand a
    boundary vertex, or expand a short run out to a nearby high-degree
    vertex. A move is returned only when it strictly grows the subgraph, adds
    no component, and does not decrease the potential."""
    if not f.vertices or f.is_spanning():
        return None
    base = leaf_potential(g, f)

    def accept(candidate: SubgraphF) -> bool:
        if candidate.vertices == f.vertices and candidate.edges == f.edges:
            return False
        if candidate.cc > f.cc:
            return False
        return leaf_potential(g, candidate).twice_value >= base.twice_value

    boundary = sorted(f.boundary())
    # adjacent goober attachment
    for w in boundary:
        for u in sorted(g.neighbors(w)):
            if u in f.vertices or not is_goober(g, u):
                continue
            cand = f.with_additions({u}, [(w, u)])
            if accept(cand):
                return cand
    # expanding a boundary vertex is tried when it cannot lose a leaf (it is
    # no leaf itself) or when it gains at least two new ones
    for w in boundary:
        outside = [u for u in g.neighbors(w) if u not in f.vertices]
        if w in f.leaves and len(outside) < 2:
            continue
        cand = expand(f, w)
        if accept(cand):
            return cand
    # pull in a high-degree vertex at distance one or two
    for w in boundary:
        for u in sorted(g.neighbors(w) - f.vertices):
            if g.degree(u) >= 4:
                cand = expand_many(f, [w, u])
                if accept(cand):
                    return cand
            for x in sorted(g.neighbors(u) - f.vertices - {w}):
                if g.degree(x) >= 4:
                    cand = expand_many(f, [w, u, x])
                    if accept(cand):
                        return cand
    return None


def _join_components(g: Graph, f: SubgraphF) -> SubgraphF:
    """Connect the subgraph's components with host edges, preferring joins
    that sacrifice the fewest leaves."""
    while f.cc > 1:
        comp = _component_of(f, min(f.vertices))
        best = None
        for u in sorted(comp):
            for w in sorted(g.neighbors(u)):
                if w in comp or w not in f.vertices:
                    continue
                loss = (1 if u in f.leaves else 0) + (1 if w in f.leaves else 0)
                key = (loss, u, w)
                if best is None or key < best:
                    best = key
        if best is None:
            raise GraphError("subgraph components cannot be joined")
        _, u, w = best
        f = f.with_additions((), [(u, w)])
    return f


def _component_of(f: SubgraphF, start: int) -> set[int]:
    adj: dict[int, list[int]] = {v: [] for v in f.vertices}
    for u, v in f.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _absorb_isolated(g: Graph, f: SubgraphF) -> SubgraphF:
    """Attach any still-missing vertices as leaves (cheapest host edge)."""
    while not f.is_spanning():
        missing = sorted(g.vertices - f.vertices)
        attached = False
        for v in missing:
            anchors = sorted(w for w in g.neighbors(v) if w in f.vertices)
            if anchors:
                keyed = sorted(anchors, key=lambda w: (w in f.leaves, w))
                f = f.with_additions({v}, [(keyed[0], v)])
                attached = True
                break
        if not attached:
            # no contact yet: seed a new component
            v = missing[0]
            f = expand(f, v)
    return f


def _greedy_from(g: Graph, start: int) -> SubgraphF:
    f = expand(SubgraphF.empty(g), start)
    while not f.is_spanning():
        nxt = try_augment(g, f)
        if nxt is not None:
            f = nxt
            continue
        # best-scoring expansion anywhere; expansions outside the subgraph
        # open a new component and pay for it in the score
        best = None
        base = leaf_potential(g, f).twice_value
        boundary = set(f.boundary())
        candidates = set(boundary)
        for w in boundary:  # everything within two steps of the boundary
            for u in g.neighbors(w) - f.vertices:
                candidates.add(u)
                candidates |= g.neighbors(u) - f.vertices
        outside = g.vertices - f.vertices
        candidates |= {v for v in outside if g.degree(v) >= 4}
        for w in sorted(candidates):
            cand = expand(f, w)
            if cand.vertices == f.vertices and cand.edges == f.edges:
                continue
            score = leaf_potential(g, cand).twice_value - base
            key = (-score, w)
            if best is None or key < best[0]:
                best = (key, cand)
        if best is not None:
            f = best[1]
            continue
        f = _absorb_isolated(g, f)
    return f


def _break_cycles(g: Graph, f: SubgraphF) -> SubgraphF:
    """Drop edges until the subgraph is a forest, preferring removals that do
    not lose leaves. Expansion-built subgraphs are already forests; this is a
    safety net for arbitrary inputs."""
    while len(f.edges) > len(f.vertices) - f.cc:
        cycle_edge_best = None
        deg = {v: 0 for v in f.vertices}
        for u, v in f.edges:
            deg[u] += 1
            deg[v] += 1
        for e in sorted(f.edges):
            u, v = e
            trial = SubgraphF(g, f.vertices, set(f.edges) - {e})
            if trial.cc != f.cc:
                continue
            gain = len(trial.leaves) - len(f.leaves)
            key = (-gain, e)
            if cycle_edge_best is None or key < cycle_edge_best[0]:
                cycle_edge_best = (key, trial)
        if cycle_edge_best is None:
            raise GraphError("could not break a cycle")
        f = cycle_edge_best[1]
    return f


def greedy_spanning_tree(g: Graph) -> tuple[set[tuple[int, int]], PotentialReport]:
    """Best-effort many-leaf spanning tree of a connected graph.

    When the input satisfies the invariant and a reduction applies, the graph
    is reduced first, solved per component, and the trees are lifted back
    through the trace. Otherwise the potential-greedy loop runs from every
    start vertex and the best tree wins.
    """
    from .reductions import reconstruct_chain, reduce_to_irreducible

    if g.n < 2:
        raise GraphError("need at least two vertices")
    if not is_connected(g):
        raise GraphError("greedy builder requires a connected graph")

    if check_invariant(g).ok:
        reduced, steps = reduce_to_irreducible(g)
        if steps:
            forest: set[tuple[int, int]] = set()
            from .graphs import connected_components

            for comp in connected_components(reduced):
                if len(comp) < 2:
                    continue
                sub = Graph(vertices=comp)
                for u, v in reduced.edges():
                    if u in comp and v in comp:
                        sub.add_edge(u, v)
                comp_edges, _ = greedy_spanning_tree(sub)
                forest |= comp_edges
            edges = reconstruct_chain(g, steps, forest)
            f = SubgraphF(g, g.vertices, edges)
            return set(f.edges), leaf_potential(g, f)

    best: SubgraphF | None = None
    for start in sorted(g.vertices):
        f = _greedy_from(g, start)
        f = _break_cycles(g, f)
        f = _join_components(g, f)
        if best is None or len(f.leaves) > len(best.leaves):
            best = f
    assert best is not None
    if len(best.edges) != g.n - 1 or best.cc != 1:
        raise GraphError("greedy construction failed to produce a spanning tree")
    return set(best.edges), leaf_potential(g, best)


def heuristic_bound(g: Graph) -> Fraction:
    """The ratio the toolkit reports greedy trees against."""
    return Fraction(n_ge3(g), 3) + Fraction(4, 3)
