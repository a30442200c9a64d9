"""Detection of the small forbidden structures: diamonds, diamond necklaces,
blossoms, their two-terminal variants, and the reduction-safety invariant.

All detectors are deterministic: candidates are grown from seeds in sorted
vertex order and reported in a canonical role order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, connected_components, is_goober

KIND_DIAMOND = "diamond"
KIND_CUBIC_DIAMOND = "cubic-diamond"
KIND_NECKLACE = "necklace"
KIND_2NECKLACE = "2-necklace"
KIND_BLOSSOM = "blossom"
KIND_2BLOSSOM = "2-blossom"
KIND_2T_DIAMOND = "2-terminal-diamond"
KIND_2T_BLOSSOM = "2-terminal-blossom"


@dataclass(frozen=True)
class PatternMatch:
    """A located occurrence of a named structure.

    ``vertices`` lists the vertices in canonical role order:
      * diamond kinds: (c1, i1, i2, c2) with i1, i2 the inner vertices;
      * necklace kinds: (c1, i, i, j, i, i, j, ..., c2) alternating inner
        pairs and shared junction vertices;
      * blossom kinds: (b, a1, a2, a3, a4, c1, c2) where {b,a1,a2} and
        {b,a3,a4} are the two triangles and c1 ~ a1,a4, c2 ~ a2,a3.
    ``terminals`` are the vertices with host degree exceeding their degree
    inside the structure.
    """

    kind: str
    vertices: tuple[int, ...]
    terminals: tuple[int, ...]
    k: int | None = None

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def to_json_dict(self) -> dict:
        d = {"kind": self.kind, "vertices": list(self.vertices), "terminals": list(self.terminals)}
        if self.k is not None:
            d["k"] = self.k
        return d


@dataclass(frozen=True)
class InvariantReport:
    """Verdict of the reduction-safety invariant with a witness on failure."""

    ok: bool
    violated_clause: str | None = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


# -- diamond blocks ------------------------------------------------------------

@dataclass(frozen=True)
class _Block:
    """One diamond: inner pair (degree 3 in the structure and in the host)
    plus its two connector vertices."""

    inner: tuple[int, int]
    conns: tuple[int, int]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.inner) | frozenset(self.conns)


def _diamond_blocks(g: Graph, seeds: set[int] | None = None) -> list[_Block]:
    """All diamonds whose inner vertices have host degree exactly 3. When
    ``seeds`` is given, only blocks touching it are returned (the callers use
    this to scan locally around a rewrite)."""
    blocks = []
    seen = set()
    for i1 in sorted(g.vertices):
        if g.degree(i1) != 3:
            continue
        for i2 in sorted(g.neighbors(i1)):
            if i2 <= i1 or g.degree(i2) != 3 or g.multiplicity(i1, i2) != 1:
                continue
            others1 = g.neighbors(i1) - {i2}
            others2 = g.neighbors(i2) - {i1}
            if others1 != others2 or len(others1) != 2:
                continue
            u, v = sorted(others1)
            if g.multiplicity(i1, u) != 1 or g.multiplicity(i1, v) != 1:
                continue
            if g.multiplicity(i2, u) != 1 or g.multiplicity(i2, v) != 1:
                continue
            block = _Block((i1, i2), (u, v))
            if block.inner in seen:
                continue
            seen.add(block.inner)
            if seeds is None or block.vertex_set() & seeds:
                blocks.append(block)
    return blocks


def find_cubic_diamonds(g: Graph) -> list[PatternMatch]:
    """Induced diamonds whose four vertices all have host degree 3."""
    out = []
    for b in _diamond_blocks(g):
        u, v = b.conns
        if g.degree(u) == 3 and g.degree(v) == 3 and not g.has_edge(u, v):
            out.append(
                PatternMatch(KIND_CUBIC_DIAMOND, (u, b.inner[0], b.inner[1], v), (u, v), k=1)
            )
    out.sort(key=lambda m: m.vertices)
    return out


def _chain_blocks(g: Graph, blocks: list[_Block]) -> list[list[_Block]]:
    """Assemble blocks into maximal chains glued at shared degree-4 junction
    vertices. Cyclic arrangements have no free ends and are dropped."""
    by_conn: dict[int, list[int]] = {}
    for idx, b in enumerate(blocks):
        for c in b.conns:
            by_conn.setdefault(c, []).append(idx)

    def junction(c: int) -> bool:
        return len(by_conn.get(c, [])) == 2 and g.degree(c) == 4

    chains = []
    used = set()
    for idx, b in enumerate(blocks):
        if idx in used:
            continue
        free = [c for c in b.conns if not junction(c)]
        if not free:
            continue  # interior of a chain, or part of a cycle of blocks
        # walk from a free end
        chain = [idx]
        used.add(idx)
        cur = idx
        start_conn = free[0]
        other = b.conns[0] if b.conns[1] == start_conn else b.conns[1]
        while junction(other):
            nxts = [j for j in by_conn[other] if j != cur]
            if not nxts or nxts[0] in used:
                break
            cur = nxts[0]
            used.add(cur)
            chain.append(cur)
            nb = blocks[cur]
            other = nb.conns[0] if nb.conns[1] == other else nb.conns[1]
        chains.append(chain)
    return [[blocks[i] for i in chain] for chain in chains]


def _chain_role_order(g: Graph, chain: list[_Block]) -> tuple[tuple[int, ...], int, int] | None:
    """Canonical vertex tuple for a chain, plus its two end connectors."""
    # junction between consecutive blocks
    def shared(a: _Block, b: _Block) -> int | None:
        common = set(a.conns) & set(b.conns)
        return next(iter(common)) if len(common) == 1 else None

    if len(chain) == 1:
        b = chain[0]
        c1, c2 = b.conns
        return (c1, b.inner[0], b.inner[1], c2), c1, c2

    first, last = chain[0], chain[-1]
    j0 = shared(first, chain[1])
    jn = shared(last, chain[-2])
    if j0 is None or jn is None:
        return None
    c1 = first.conns[0] if first.conns[1] == j0 else first.conns[1]
    c2 = last.conns[0] if last.conns[1] == jn else last.conns[1]
    if c2 < c1:
        chain = list(reversed(chain))
        c1, c2 = c2, c1
    verts: list[int] = [c1]
    prev_end = c1
    for b in chain:
        verts.extend(b.inner)
        nxt = b.conns[0] if b.conns[1] == prev_end else b.conns[1]
        verts.append(nxt)
        prev_end = nxt
    return tuple(verts), c1, c2


def find_2necklaces(g: Graph, seeds: set[int] | None = None) -> list[PatternMatch]:
    """Maximal diamond chains whose only terminals are the two free end
    connectors, both of host degree 3. The edge c1-c2 may exist (the closed
    form); every other extra adjacency is excluded by the exact-degree
    conditions on the non-terminal vertices."""
    blocks = _diamond_blocks(g, seeds=None)
    matches = []
    for chain in _chain_blocks(g, blocks):
        role = _chain_role_order(g, chain)
        if role is None:
            continue
        verts, c1, c2 = role
        if g.degree(c1) != 3 or g.degree(c2) != 3 or c1 == c2:
            continue
        matches.append(PatternMatch(KIND_2NECKLACE, verts, tuple(sorted((c1, c2))), k=len(chain)))
    if seeds is not None:
        matches = [m for m in matches if m.vertex_set() & seeds]
    dedup: dict[frozenset[int], PatternMatch] = {}
    for m in sorted(matches, key=lambda m: m.vertices):
        dedup.setdefault(m.vertex_set(), m)
    return sorted(dedup.values(), key=lambda m: m.vertices)


# -- blossoms --------------------------------------------------------------------

def _blossom_matches(g: Graph, exact_terminal_degree: bool, seeds: set[int] | None = None) -> list[PatternMatch]:
    """Blossom subgraphs whose only terminals are the two connector vertices.
    ``exact_terminal_degree`` asks for host degree exactly 3 at the
    connectors; otherwise any degree above 2 qualifies."""
    out = []
    for b in sorted(g.vertices):
        if g.degree(b) != 4 or g.loops_at(b):
            continue
        nbrs = sorted(g.neighbors(b))
        if len(nbrs) != 4 or any(g.degree(a) != 3 for a in nbrs):
            continue
        if any(g.multiplicity(b, a) != 1 for a in nbrs):
            continue
        p, q, r, s = nbrs
        for pair1, pair2 in (((p, q), (r, s)), ((p, r), (q, s)), ((p, s), (q, r))):
            if not (g.has_edge(*pair1) and g.has_edge(*pair2)):
                continue

            def third(a: int, partner: int) -> int | None:
                rest = g.neighbors(a) - {b, partner}
                return next(iter(rest)) if len(rest) == 1 else None

            a1, a2 = pair1
            x, y = pair2
            t1, t2 = third(a1, a2), third(a2, a1)
            tx, ty = third(x, y), third(y, x)
            if None in (t1, t2, tx, ty):
                continue
            # c1 joins a1 with one vertex of the second triangle
            if t1 == tx and t2 == ty:
                a3, a4 = y, x
            elif t1 == ty and t2 == tx:
                a3, a4 = x, y
            else:
                continue
            c1, c2 = t1, t2
            body = {b, a1, a2, a3, a4}
            if c1 == c2 or c1 in body or c2 in body:
                continue
            dc1, dc2 = g.degree(c1), g.degree(c2)
            if exact_terminal_degree:
                if dc1 != 3 or dc2 != 3:
                    continue
            else:
                if dc1 < 3 or dc2 < 3:
                    continue
            match = PatternMatch(
                KIND_2BLOSSOM if exact_terminal_degree else KIND_2T_BLOSSOM,
                (b, a1, a2, a3, a4, c1, c2),
                tuple(sorted((c1, c2))),
            )
            if seeds is None or match.vertex_set() & seeds:
                out.append(match)
    # one match per vertex set
    dedup: dict[frozenset[int], PatternMatch] = {}
    for m in sorted(out, key=lambda m: m.vertices):
        dedup.setdefault(m.vertex_set(), m)
    return sorted(dedup.values(), key=lambda m: m.vertices)


def find_2blossoms(g: Graph, seeds: set[int] | None = None) -> list[PatternMatch]:
    """Blossoms whose only terminals are their two connectors, both of host
    degree 3."""
    return _blossom_matches(g, exact_terminal_degree=True, seeds=seeds)


def find_2terminal(g: Graph, kind: str) -> list[PatternMatch]:
    """Diamond or blossom subgraphs whose only terminals are the two vertices
    of structure degree 2, of arbitrary host degree (at least 3, so they
    really are terminals)."""
    if kind in (KIND_2T_DIAMOND, KIND_DIAMOND):
        out = []
        for b in _diamond_blocks(g):
            u, v = b.conns
            if g.degree(u) >= 3 and g.degree(v) >= 3:
                out.append(PatternMatch(KIND_2T_DIAMOND, (u, b.inner[0], b.inner[1], v), (u, v), k=1))
        dedup: dict[frozenset[int], PatternMatch] = {}
        for m in sorted(out, key=lambda m: m.vertices):
            dedup.setdefault(m.vertex_set(), m)
        return sorted(dedup.values(), key=lambda m: m.vertices)
    if kind in (KIND_2T_BLOSSOM, KIND_BLOSSOM):
        return _blossom_matches(g, exact_terminal_degree=False)
    raise ValueError(f"unknown 2-terminal kind {kind!r}")


def verify_match(g: Graph, m: PatternMatch) -> bool:
    """Re-check a match edge by edge against its canonical pattern."""
    vs = m.vertices
    if len(set(vs)) != len(vs):
        return False
    if m.kind in (KIND_CUBIC_DIAMOND, KIND_2T_DIAMOND):
        c1, i1, i2, c2 = vs
        need = [(c1, i1), (c1, i2), (c2, i1), (c2, i2), (i1, i2)]
        if not all(g.has_edge(a, b) for a, b in need):
            return False
        if g.degree(i1) != 3 or g.degree(i2) != 3:
            return False
        if m.kind == KIND_CUBIC_DIAMOND:
            return g.degree(c1) == 3 and g.degree(c2) == 3 and not g.has_edge(c1, c2)
        return g.degree(c1) >= 3 and g.degree(c2) >= 3
    if m.kind == KIND_2NECKLACE:
        if len(vs) != 3 * m.k + 1:
            return False
        for j in range(m.k):
            c1, i1, i2, c2 = vs[3 * j], vs[3 * j + 1], vs[3 * j + 2], vs[3 * j + 3]
            need = [(c1, i1), (c1, i2), (c2, i1), (c2, i2), (i1, i2)]
            if not all(g.has_edge(a, b) for a, b in need):
                return False
            if g.degree(i1) != 3 or g.degree(i2) != 3:
                return False
        junctions = [vs[3 * j] for j in range(1, m.k)]
        if any(g.degree(j) != 4 for j in junctions):
            return False
        return g.degree(vs[0]) == 3 and g.degree(vs[-1]) == 3
    if m.kind in (KIND_2BLOSSOM, KIND_2T_BLOSSOM):
        b, a1, a2, a3, a4, c1, c2 = vs
        need = [
            (b, a1), (b, a2), (b, a3), (b, a4),
            (a1, a2), (a3, a4),
            (c1, a1), (c1, a4), (c2, a2), (c2, a3),
        ]
        if not all(g.has_edge(x, y) for x, y in need):
            return False
        if g.degree(b) != 4 or any(g.degree(a) != 3 for a in (a1, a2, a3, a4)):
            return False
        if m.kind == KIND_2BLOSSOM:
            return g.degree(c1) == 3 and g.degree(c2) == 3
        return g.degree(c1) >= 3 and g.degree(c2) >= 3
    return False


# -- the invariant ---------------------------------------------------------------

def _component_simple_or_k2e(g: Graph, comp: frozenset[int]) -> bool:
    multi = []
    for v in comp:
        if g.loops_at(v):
            return False
        for w in g.neighbors(v):
            if w > v and g.multiplicity(v, w) > 1:
                multi.append((v, w, g.multiplicity(v, w)))
    if not multi:
        return True
    # exactly a two-vertex component joined by a parallel pair
    if len(comp) != 2 or len(multi) != 1:
        return False
    v, w, k = multi[0]
    return k == 2 and g.degree(v) == 2 and g.degree(w) == 2


def check_invariant(g: Graph) -> InvariantReport:
    """The property maintained by the reduction system: each component is
    connected-or-goober-holding, simple or a doubled edge on two vertices, and
    free of 2-necklaces and 2-blossoms."""
    comps = connected_components(g)
    if len(comps) > 1:
        for comp in comps:
            if not any(is_goober(g, v) for v in comp):
                return InvariantReport(False, "component-without-goober", comp)
    for comp in comps:
        if not _component_simple_or_k2e(g, comp):
            return InvariantReport(False, "multi-edge", comp)
    necklaces = find_2necklaces(g)
    if necklaces:
        return InvariantReport(False, "2-necklace", necklaces[0])
    blossoms = find_2blossoms(g)
    if blossoms:
        return InvariantReport(False, "2-blossom", blossoms[0])
    return InvariantReport(True)


def introduces_forbidden(before: Graph, after: Graph, touched: set[int]) -> PatternMatch | None:
    """First 2-necklace or 2-blossom of ``after`` that intersects the touched
    vertex set and was not already present in ``before``."""
    old = {m.vertex_set() for m in find_2necklaces(before)}
    old |= {m.vertex_set() for m in find_2blossoms(before)}
    for m in find_2necklaces(after, seeds=touched) + find_2blossoms(after, seeds=touched):
        if m.vertex_set() not in old:
            return m
    return None
