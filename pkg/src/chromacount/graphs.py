"""Immutable simple undirected graphs: construction, parsing, generators,
canonical forms.

Vertices are dense 0-based integers. Pattern graphs stay tiny (<= 12
vertices); hosts can be large (up to a few million vertices), so adjacency is
kept as sorted tuples plus lazily built per-vertex sets, with bitset rows only
for small graphs.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import EdgeListError

BITSET_MAX_VERTICES = 4096


class Graph:
    """Simple undirected graph with immutable vertex/edge structure."""

    __slots__ = ("n", "edges", "adj", "_adj_sets", "_bits", "_canon", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
            normalized.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = frozenset(normalized)
        adj = [[] for _ in range(n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._adj_sets = None
        self._bits = None
        self._canon = None
        self._hash = None

    # -- basic queries ----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def adj_sets(self) -> tuple[frozenset, ...]:
        if self._adj_sets is None:
            self._adj_sets = tuple(frozenset(a) for a in self.adj)
        return self._adj_sets

    @property
    def bits(self):
        """Per-vertex adjacency bitsets (ints); only for small graphs."""
        if self._bits is None:
            if self.n > BITSET_MAX_VERTICES:
                raise ValueError("bitset rows are only kept for small graphs")
            rows = [0] * self.n
            for u, v in self.edges:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            self._bits = tuple(rows)
        return self._bits

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_star(self) -> bool:
        """True for K_{1,r} (r >= 1), including the single edge K_2."""
        if self.n < 2 or self.edge_count != self.n - 1:
            return False
        degs = sorted(self.degree(v) for v in range(self.n))
        return degs[-1] == self.n - 1 and all(d == 1 for d in degs[:-1])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Apply vertex permutation: new label of v is perm[v]."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))


# -- parsing ---------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text: optional header line ``n <count>``, one edge per
    line ``u v``, '#' starts a comment, whitespace separated."""
    header_n = None
    edges = []
    max_seen = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header_n is None and not edges and parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise EdgeListError(f"line {lineno}: bad header {raw!r}")
            header_n = int(parts[1])
            continue
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected two vertex labels, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer vertex label in {raw!r}") from None
        if u < 0 or v < 0:
            raise EdgeListError(f"line {lineno}: negative vertex label in {raw!r}")
        if u == v:
            raise EdgeListError(f"line {lineno}: self-loop {u}")
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    n = max_seen + 1 if header_n is None else header_n
    if header_n is not None and max_seen >= header_n:
        raise EdgeListError(f"edge mentions vertex {max_seen} but header says n={header_n}")
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


# -- generators ------------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete(n) needs n >= 1")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle(n) needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path(n) needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star(r: int) -> Graph:
    """Hub 0 joined to r leaves."""
    if r < 1:
        raise ValueError("star(r) needs r >= 1")
    return Graph(r + 1, ((0, i) for i in range(1, r + 1)))


def wheel(n: int) -> Graph:
    """Hub 0 joined to every vertex of the rim cycle 1..n."""
    if n < 3:
        raise ValueError("wheel(n) needs n >= 3")
    edges = [(0, i) for i in range(1, n + 1)]
    edges.extend((i, i % n + 1) for i in range(1, n + 1))
    return Graph(n + 1, edges)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("part sizes must all be >= 1")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    n = starts[-1]
    edges = []
    for a in range(len(sizes)):
        for b in range(a + 1, len(sizes)):
            for u in range(starts[a], starts[a + 1]):
                for v in range(starts[b], starts[b + 1]):
                    edges.append((u, v))
    return Graph(n, edges)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def er_pair_mask(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """One uniform per unordered pair, in lexicographic (u,v) order; edge iff
    the draw falls below p. Shared by er() and the Monte Carlo driver so both
    consume streams identically."""
    return rng.random(n * (n - 1) // 2) < p


def pair_index(u: np.ndarray, v: np.ndarray, n: int):
    """Position of pair (u,v), u < v, in lexicographic pair order."""
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi draw G(n, p) from a counter-based stream keyed by seed."""
    if n < 1:
        raise ValueError("er(n, p, seed) needs n >= 1")
    if not (0.0 <= p <= 1.0):
        raise ValueError("edge probability must lie in [0, 1]")
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    mask = er_pair_mask(n, p, rng)
    iu, iv = np.triu_indices(n, k=1)
    sel = np.flatnonzero(mask)
    return Graph(n, zip(iu[sel].tolist(), iv[sel].tolist()))


# -- special constructions -------------------------------------------------


def pyramid(h: Graph, n: int) -> Graph:
    """n copies of h sharing the base vertices 0..|V(h)|-2, with the last
    vertex of h replaced by a distinct apex per copy."""
    if n < 1:
        raise ValueError("pyramid height must be >= 1")
    if h.n < 2:
        raise ValueError("pattern must have at least 2 vertices")
    if not h.is_connected():
        raise ValueError("pattern must be connected")
    apex = h.n - 1
    base_edges = [(u, v) for u, v in h.edges if u != apex and v != apex]
    apex_neighbors = h.adj[apex]
    edges = list(base_edges)
    for a in range(n):
        z = (h.n - 1) + a
        edges.extend((b, z) for b in apex_neighbors)
    return Graph(h.n - 1 + n, edges)


def pyramid_plus_copies(h: Graph, n: int, rate: float) -> Graph:
    """Disjoint union of pyramid(h, n) and ceil(rate*n) free-standing copies
    of h. Rejected for star patterns, whose pyramids collapse into stars."""
    if rate <= 0:
        raise ValueError("rate must be positive")
    if h.is_star():
        raise ValueError("star patterns are not supported by this construction")
    extra = math.ceil(rate * n)
    return disjoint_union([pyramid(h, n)] + [h] * extra)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on the given vertices, relabeled 0..k-1 in ascending
    original order."""
    vs = sorted(set(vertices))
    if vs and (vs[0] < 0 or vs[-1] >= g.n):
        raise ValueError("vertex out of range")
    pos = {v: i for i, v in enumerate(vs)}
    edges = []
    for i, v in enumerate(vs):
        nbrs = g.adj_sets[v]
        for w in vs[i + 1:]:
            if w in nbrs:
                edges.append((pos[v], pos[w]))
    return Graph(len(vs), edges)


# -- canonical form ----------------------------------------------------------


def _refine(adj, partition):
    """Equitable refinement of an ordered partition: split cells by the
    multiset of neighbor cell indices until stable. Cell order is derived
    only from isomorphism-invariant data."""
    while True:
        cell_id = {}
        for i, cell in enumerate(partition):
            for v in cell:
                cell_id[v] = i
        new_partition = []
        changed = False
        for cell in partition:
            if len(cell) == 1:
                new_partition.append(cell)
                continue
            groups = {}
            for v in cell:
                sig = [0] * len(partition)
                for w in adj[v]:
                    sig[cell_id[w]] += 1
                groups.setdefault(tuple(sig), []).append(v)
            if len(groups) == 1:
                new_partition.append(cell)
            else:
                changed = True
                for sig in sorted(groups):
                    new_partition.append(groups[sig])
        partition = new_partition
        if not changed:
            return partition


def _encode(g: Graph, order):
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    relabeled = sorted(
        (pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]) for u, v in g.edges
    )
    out = bytearray()
    out += g.n.to_bytes(4, "big")
    for u, v in relabeled:
        out += u.to_bytes(2, "big")
        out += v.to_bytes(2, "big")
    return bytes(out)


def _canon_search(g: Graph, partition):
    partition = _refine(g.adj, partition)
    target = None
    for cell in partition:
        if len(cell) > 1 and (target is None or len(cell) < len(target)):
            target = cell
    if target is None:
        return _encode(g, [v for cell in partition for v in cell])
    best = None
    for v in target:
        branched = []
        for cell in partition:
            if cell is target:
                branched.append([v])
                branched.append([w for w in cell if w != v])
            else:
                branched.append(cell)
        cand = _canon_search(g, branched)
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(g: Graph) -> bytes:
    """Byte string identifying the isomorphism class of g: equal forms iff
    isomorphic. Individualization-refinement with exhaustive branching, so
    worst case is exponential; intended for pattern-sized graphs."""
    if g._canon is None:
        if g.n == 0:
            g._canon = _encode(g, [])
        else:
            degree_cells = {}
            for v in range(g.n):
                degree_cells.setdefault(g.degree(v), []).append(v)
            partition = [degree_cells[d] for d in sorted(degree_cells)]
            g._canon = _canon_search(g, partition)
    return g._canon


def isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.edge_count == b.edge_count and canonical_form(a) == canonical_form(b)
