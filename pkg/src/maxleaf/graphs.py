"""Mutable multigraph over integer vertex ids, plus the derived structures
(degree-2 suppression, subgraph-with-outside) everything else builds on.

Vertex ids are stable: deleting a vertex leaves a hole instead of renumbering,
so recorded matches and reduction traces stay valid across mutations.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from typing import IO, Iterable, Iterator


class GraphError(Exception):
    """Violation of a structural contract (missing vertex, bad argument, ...)."""


class ParseError(GraphError):
    """Malformed graph text. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class RangeError(ParseError):
    """Edge endpoint outside the declared vertex range."""


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical unordered form of an edge."""
    return (u, v) if u <= v else (v, u)


class Graph:
    """Undirected multigraph. Loops and parallel edges are representable;
    a loop contributes 2 to the degree of its vertex."""

    __slots__ = ("_adj",)

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self._adj: dict[int, Counter[int]] = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # -- construction / mutation -------------------------------------------

    def add_vertex(self, v: int) -> None:
        self._adj.setdefault(v, Counter())

    def add_edge(self, u: int, v: int) -> None:
        self.add_vertex(u)
        self.add_vertex(v)
        if u == v:
            self._adj[u][u] += 1
        else:
            self._adj[u][v] += 1
            self._adj[v][u] += 1

    def remove_edge(self, u: int, v: int) -> None:
        """Remove one copy of the edge uv."""
        if self.multiplicity(u, v) == 0:
            raise GraphError(f"no edge {u}-{v} to remove")
        self._adj[u][v] -= 1
        if self._adj[u][v] == 0:
            del self._adj[u][v]
        if u != v:
            self._adj[v][u] -= 1
            if self._adj[v][u] == 0:
                del self._adj[v][u]

    def remove_vertex(self, v: int) -> None:
        if v not in self._adj:
            raise GraphError(f"no vertex {v}")
        for w in list(self._adj[v]):
            if w != v:
                del self._adj[w][v]
        del self._adj[v]

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {v: Counter(c) for v, c in self._adj.items()}
        return g

    # -- queries ------------------------------------------------------------

    @property
    def vertices(self) -> set[int]:
        return set(self._adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        # non-loop entries appear symmetrically, loops once
        s = sum(k for v, c in self._adj.items() for w, k in c.items() if w != v)
        loops = sum(c[v] for v, c in self._adj.items() if v in c)
        return s // 2 + loops

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def multiplicity(self, u: int, v: int) -> int:
        if u not in self._adj:
            return 0
        return self._adj[u].get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return self.multiplicity(u, v) > 0

    def degree(self, v: int) -> int:
        if v not in self._adj:
            raise GraphError(f"no vertex {v}")
        d = 0
        for w, k in self._adj[v].items():
            d += 2 * k if w == v else k
        return d

    def loops_at(self, v: int) -> int:
        return self._adj[v].get(v, 0)

    def neighbors(self, v: int) -> set[int]:
        """Distinct neighbors; includes v itself only when a loop exists."""
        if v not in self._adj:
            raise GraphError(f"no vertex {v}")
        return set(self._adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once per copy, canonically ordered endpoints."""
        for v in sorted(self._adj):
            for w in sorted(self._adj[v]):
                if w < v:
                    continue
                for _ in range(self._adj[v][w]):
                    yield (v, w)

    def edge_multiset(self) -> Counter[tuple[int, int]]:
        return Counter(self.edges())

    def simple_edges(self) -> list[tuple[int, int]]:
        """Distinct non-loop adjacent pairs."""
        return [(v, w) for v in sorted(self._adj) for w in sorted(self._adj[v]) if v < w]

    def is_simple(self) -> bool:
        return all(self.multiplicity(u, v) == 1 and u != v for u, v in set(self.edges()))

    def min_degree(self) -> int:
        return min((self.degree(v) for v in self._adj), default=0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self._adj), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edge_multiset() == other.edge_multiset()

    def __hash__(self):  # mutable; identity hashing only
        return id(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- vertex classes ----------------------------------------------------------

GOOBER = "goober"
DEGREE3 = "degree3"
HIGH_DEGREE = "high-degree"


def vertex_class(g: Graph, v: int) -> str:
    d = g.degree(v)
    if d <= 2:
        return GOOBER
    if d == 3:
        return DEGREE3
    return HIGH_DEGREE


def classify_vertices(g: Graph) -> dict[int, str]:
    return {v: vertex_class(g, v) for v in g.vertices}


def is_goober(g: Graph, v: int) -> bool:
    return g.degree(v) <= 2


def n_ge3(g: Graph) -> int:
    """Number of vertices of degree at least 3."""
    return sum(1 for v in g.vertices if g.degree(v) >= 3)


def vertices_ge3(g: Graph) -> set[int]:
    return {v for v in g.vertices if g.degree(v) >= 3}


def graph_leaves(g: Graph) -> set[int]:
    """Degree-1 vertices."""
    return {v for v in g.vertices if g.degree(v) == 1}


# -- connectivity -------------------------------------------------------------

def connected_components(g: Graph) -> list[frozenset[int]]:
    """Partition of the vertices into maximal connected sets."""
    seen: set[int] = set()
    parts: list[frozenset[int]] = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        parts.append(frozenset(comp))
    return parts


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def bridges_and_cut_vertices(g: Graph) -> tuple[set[tuple[int, int]], set[int]]:
    """Exact bridge and cut-vertex sets. Loops are never bridges and a
    parallel pair is never a bridge."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    bridges: set[tuple[int, int]] = set()
    cuts: set[int] = set()
    clock = itertools.count()

    for root in sorted(g.vertices):
        if root in disc:
            continue
        parent[root] = None
        disc[root] = low[root] = next(clock)
        iters = {root: iter(sorted(w for w in g.neighbors(root) if w != root))}
        stack = [root]
        root_children = 0
        while stack:
            v = stack[-1]
            advanced = False
            for w in iters[v]:
                if w not in disc:
                    parent[w] = v
                    disc[w] = low[w] = next(clock)
                    iters[w] = iter(sorted(u for u in g.neighbors(w) if u != w))
                    stack.append(w)
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if w == parent[v]:
                    # extra parallel copies of the tree edge act as back edges
                    if g.multiplicity(v, w) >= 2:
                        low[v] = min(low[v], disc[w])
                else:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                p = parent[v]
                if p is not None:
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p] and g.multiplicity(p, v) == 1:
                        bridges.add(edge_key(p, v))
                    if p != root and low[v] >= disc[p]:
                        cuts.add(p)
        if root_children >= 2:
            cuts.add(root)
    return bridges, cuts


# -- text format ---------------------------------------------------------------

def parse_graph(data: str | bytes | IO) -> Graph:
    """Parse the text graph format: comment lines ``c ...``, one header
    ``p <n> <m>``, then m lines ``e <u> <v>`` with 1-based endpoints.

    Parallel edges are accepted; loops are rejected.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    g = Graph()
    n = None
    m_declared = None
    m_seen = 0
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            try:
                n, m_declared = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 1 or m_declared < 0:
                raise ParseError("header counts out of range", lineno)
            for v in range(1, n + 1):
                g.add_vertex(v)
        elif fields[0] == "e":
            if n is None:
                raise ParseError("edge before header", lineno)
            if len(fields) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise RangeError(f"endpoint out of range 1..{n}", lineno)
            if u == v:
                raise ParseError("loops are not accepted in input", lineno)
            g.add_edge(u, v)
            m_seen += 1
        else:
            raise ParseError(f"unknown directive {fields[0]!r}", lineno)
    if n is None:
        raise ParseError("missing header")
    if m_seen != m_declared:
        raise ParseError(f"header declares {m_declared} edges, found {m_seen}")
    return g


def write_graph(g: Graph, comment: str | None = None) -> str:
    """Serialize in the same text format. Vertex ids are compacted to 1..n in
    sorted order (mutation may have left holes)."""
    order = sorted(g.vertices)
    remap = {v: i for i, v in enumerate(order, start=1)}
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    edges = [(remap[u], remap[v]) for u, v in g.edges()]
    lines.append(f"p {len(order)} {len(edges)}")
    for u, v in sorted(edge_key(u, v) for u, v in edges):
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, name: str = "G") -> str:
    """DOT export: one node per vertex, one edge per multi-edge copy."""
    lines = [f"graph {name} {{"]
    for v in sorted(g.vertices):
        lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- degree-2 suppression -------------------------------------------------------

@dataclass(frozen=True)
class SEdge:
    """One edge of a suppressed graph. ``path`` is the full vertex sequence of
    the host path (or cycle, when u == v) this edge stands for, endpoints
    included; ``internal_count`` is the number of suppressed inner vertices."""

    u: int
    v: int
    internal_count: int
    cost: int | None  # min(internal_count, 2); None on loops
    path: tuple[int, ...]

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass
class SuppressedGraph:
    """Result of suppressing every degree-2 vertex of a connected host."""

    vertices: frozenset[int]
    sedges: list[SEdge]

    def is_empty(self) -> bool:
        return not self.vertices

    def degree(self, v: int) -> int:
        d = 0
        for e in self.sedges:
            if e.is_loop:
                d += 2 if e.u == v else 0
            else:
                d += (e.u == v) + (e.v == v)
        return d

    def expand_back(self) -> Graph:
        """Rebuild the host graph from the stored paths."""
        g = Graph(vertices=self.vertices)
        for e in self.sedges:
            for a, b in zip(e.path, e.path[1:]):
                g.add_edge(a, b)
        return g

    def to_json_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [
                {
                    "u": e.u,
                    "v": e.v,
                    "internal_count": e.internal_count,
                    "cost": e.cost,
                    "loop": e.is_loop,
                }
                for e in self.sedges
            ],
        }


def suppress(g: Graph) -> SuppressedGraph:
    """Collapse every maximal run of degree-2 vertices of a connected graph
    into a single edge carrying the count of suppressed vertices. A graph with
    no degree-3 vertex (path or cycle) suppresses to the empty graph."""
    if not is_connected(g):
        raise GraphError("suppression requires a connected graph")
    for v in g.vertices:
        if g.loops_at(v):
            raise GraphError("suppression input must be loop-free")
    if not any(g.degree(v) >= 3 for v in g.vertices):
        return SuppressedGraph(frozenset(), [])

    anchors = {v for v in g.vertices if g.degree(v) != 2}
    sedges: list[SEdge] = []
    visited_mid: set[int] = set()

    for a in sorted(anchors):
        # direct anchor-anchor edges, each copy once
        for w in sorted(g.neighbors(a)):
            if w in anchors and a <= w:
                if a == w:
                    raise GraphError("unexpected loop at anchor")
                for _ in range(g.multiplicity(a, w)):
                    sedges.append(SEdge(a, w, 0, 0, (a, w)))
        # walks through degree-2 runs
        for w in sorted(g.neighbors(a)):
            if w in anchors or w in visited_mid:
                continue
            if g.multiplicity(a, w) > 1:
                raise GraphError("parallel edge at a degree-2 vertex")
            path = [a, w]
            prev, cur = a, w
            while cur not in anchors:
                visited_mid.add(cur)
                nbrs = [x for x in g.neighbors(cur) if x != prev]
                if len(nbrs) != 1 or g.degree(cur) != 2:
                    raise GraphError("parallel edge or loop inside a degree-2 run")
                prev, cur = cur, nbrs[0]
                path.append(cur)
            b = cur
            internal = len(path) - 2
            if a == b:
                sedges.append(SEdge(a, a, internal, None, tuple(path)))
            else:
                u, v = (a, b) if a <= b else (b, a)
                if u != a:
                    path.reverse()
                sedges.append(SEdge(u, v, internal, min(internal, 2), tuple(path)))

    unvisited = {v for v in g.vertices if g.degree(v) == 2} - visited_mid
    if unvisited:
        raise GraphError("degree-2 cycle with no anchor")  # unreachable when connected
    return SuppressedGraph(frozenset(anchors), sedges)


# -- subgraphs and the graph outside them ---------------------------------------

class SubgraphF:
    """A subgraph of a host graph: a vertex set plus an edge subset. Component
    count, leaves and dead leaves are computed once at construction."""

    __slots__ = ("host", "vertices", "edges", "cc", "leaves", "dead_leaves")

    def __init__(self, host: Graph, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        self.host = host
        self.vertices = frozenset(vertices)
        self.edges = frozenset(edge_key(u, v) for u, v in edges)
        for v in self.vertices:
            if not host.has_vertex(v):
                raise GraphError(f"subgraph vertex {v} not in host")
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"subgraph edge {u}-{v} has endpoint outside the vertex set")
            if not host.has_edge(u, v):
                raise GraphError(f"subgraph edge {u}-{v} not in host")
        deg = Counter()
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        self.leaves = frozenset(v for v in self.vertices if deg[v] == 1)
        self.dead_leaves = frozenset(
            v for v in self.leaves if all(w in self.vertices for w in host.neighbors(v))
        )
        self.cc = self._count_components()

    @classmethod
    def empty(cls, host: Graph) -> "SubgraphF":
        return cls(host, (), ())

    def _count_components(self) -> int:
        seen: set[int] = set()
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        count = 0
        for start in self.vertices:
            if start in seen:
                continue
            count += 1
            queue = deque([start])
            seen.add(start)
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return count

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.edges if v in (u, w))

    def is_spanning(self) -> bool:
        return self.vertices == self.host.vertices

    def boundary(self) -> set[int]:
        """Vertices of the subgraph with at least one host neighbor outside."""
        return {
            v
            for v in self.vertices
            if any(w not in self.vertices for w in self.host.neighbors(v))
        }

    def with_additions(self, new_vertices: Iterable[int], new_edges: Iterable[tuple[int, int]]) -> "SubgraphF":
        return SubgraphF(
            self.host,
            self.vertices | set(new_vertices),
            set(self.edges) | {edge_key(u, v) for u, v in new_edges},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgraphF):
            return NotImplemented
        return (
            self.host is other.host
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((id(self.host), self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"SubgraphF(|V|={len(self.vertices)}, |E|={len(self.edges)}, cc={self.cc})"


def outside_subgraph(g: Graph, f: SubgraphF) -> Graph:
    """Edge-induced graph on the edges with at least one endpoint outside the
    subgraph's vertex set."""
    if f.is_spanning():
        raise GraphError("subgraph is spanning; there is no outside")
    out = Graph()
    for u, v in set(g.edges()):
        if u not in f.vertices or v not in f.vertices:
            for _ in range(g.multiplicity(u, v)):
                out.add_edge(u, v)
    return out
