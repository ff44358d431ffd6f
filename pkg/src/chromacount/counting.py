"""Combinatorial counts on pattern/host graph pairs.

Counts are exact Python integers. Pattern-side enumerations (pivot joins,
supergraph classes) brute-force over tuples and deduplicate by canonical
form; host-side counting is backtracking search that maps pattern vertices in
a connectivity-respecting order, always iterating the smallest adjacency list
among already-mapped neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

import numpy as np

from .errors import CopyBudgetError, CountingInternalError
from .graphs import Graph, canonical_form, complete

DEFAULT_COPY_CAP = 10_000_000


# -- search order ------------------------------------------------------------


def _search_plan(h: Graph, induced: bool):
    """Order pattern vertices so each new vertex touches mapped ones when
    possible; per position, record earlier positions that must be adjacent
    (and, for induced search, non-adjacent)."""
    n = h.n
    order = []
    placed = [False] * n
    for _ in range(n):
        best = None
        best_key = None
        for v in range(n):
            if placed[v]:
                continue
            mapped_nbrs = sum(1 for w in h.adj[v] if placed[w])
            key = (mapped_nbrs, h.degree(v), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed[best] = True
    pos = {v: i for i, v in enumerate(order)}
    anchors = []
    non_anchors = []
    for i, v in enumerate(order):
        anc = sorted(pos[w] for w in h.adj[v] if pos[w] < i)
        anchors.append(tuple(anc))
        if induced:
            nbrs = set(h.adj[v])
            non_anchors.append(tuple(j for j in range(i) if order[j] not in nbrs))
        else:
            non_anchors.append(())
    degs = tuple(h.degree(v) for v in order)
    return order, anchors, non_anchors, degs


def _iter_injective_maps(h: Graph, g: Graph, induced: bool):
    """Yield injective maps pattern-vertex -> host-vertex preserving edges
    (and, if induced, non-edges)."""
    if h.n == 0:
        yield ()
        return
    if h.n > g.n:
        return
    order, anchors, non_anchors, degs = _search_plan(h, induced)
    k = h.n
    gadj = g.adj
    gsets = g.adj_sets
    used = bytearray(g.n)
    assign = [0] * k

    def extend(i):
        if i == k:
            img = [0] * k
            for j in range(k):
                img[order[j]] = assign[j]
            yield tuple(img)
            return
        need = degs[i]
        anc = anchors[i]
        non = non_anchors[i]
        if anc:
            imgs = [assign[j] for j in anc]
            base = imgs[0]
            for w in imgs[1:]:
                if len(gadj[w]) < len(gadj[base]):
                    base = w
            for w in gadj[base]:
                if used[w] or len(gadj[w]) < need:
                    continue
                ok = True
                for o in imgs:
                    if o is not base and w not in gsets[o]:
                        ok = False
                        break
                if ok and non:
                    for j in non:
                        if w in gsets[assign[j]]:
                            ok = False
                            break
                if ok:
                    used[w] = 1
                    assign[i] = w
                    yield from extend(i + 1)
                    used[w] = 0
        else:
            for w in range(g.n):
                if used[w] or len(gadj[w]) < need:
                    continue
                if non:
                    bad = False
                    for j in non:
                        if w in gsets[assign[j]]:
                            bad = True
                            break
                    if bad:
                        continue
                used[w] = 1
                assign[i] = w
                yield from extend(i + 1)
                used[w] = 0

    yield from extend(0)


def _count_injective_maps(h: Graph, g: Graph, induced: bool) -> int:
    if h.n == 0:
        return 1
    if h.n > g.n:
        return 0
    order, anchors, non_anchors, degs = _search_plan(h, induced)
    k = h.n
    gadj = g.adj
    gsets = g.adj_sets
    used = bytearray(g.n)
    assign = [0] * k

    def extend(i):
        if i == k:
            return 1
        total = 0
        need = degs[i]
        anc = anchors[i]
        non = non_anchors[i]
        if anc:
            imgs = [assign[j] for j in anc]
            base = imgs[0]
            for w in imgs[1:]:
                if len(gadj[w]) < len(gadj[base]):
                    base = w
            for w in gadj[base]:
                if used[w] or len(gadj[w]) < need:
                    continue
                ok = True
                for o in imgs:
                    if o is not base and w not in gsets[o]:
                        ok = False
                        break
                if ok and non:
                    for j in non:
                        if w in gsets[assign[j]]:
                            ok = False
                            break
                if ok:
                    used[w] = 1
                    assign[i] = w
                    total += extend(i + 1)
                    used[w] = 0
        else:
            for w in range(g.n):
                if used[w] or len(gadj[w]) < need:
                    continue
                if non:
                    bad = False
                    for j in non:
                        if w in gsets[assign[j]]:
                            bad = True
                            break
                    if bad:
                        continue
                used[w] = 1
                assign[i] = w
                total += extend(i + 1)
                used[w] = 0
        return total

    return extend(0)


# -- public counts -----------------------------------------------------------


def count_injective_homs(h: Graph, g: Graph) -> int:
    """Number of injective maps V(h) -> V(g) sending edges to edges."""
    if h.n < 1:
        raise ValueError("pattern must have at least one vertex")
    return _count_injective_maps(h, g, induced=False)


def automorphism_count(g: Graph) -> int:
    """|Aut(g)|: adjacency-preserving bijections, found by exhaustive
    backtracking (an injective self-map hitting all edges is an
    automorphism)."""
    if g.n == 0:
        return 1
    return _count_injective_maps(g, g, induced=False)


def automorphisms(h: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of h as permutation tuples."""
    return list(_iter_injective_maps(h, h, induced=False))


def count_copies(h: Graph, g: Graph) -> int:
    """Number of subgraphs of g isomorphic to h."""
    homs = count_injective_homs(h, g)
    aut = automorphism_count(h)
    q, r = divmod(homs, aut)
    if r:
        raise CountingInternalError(
            f"injective hom count {homs} not divisible by |Aut|={aut}"
        )
    return q


def count_induced_copies(f: Graph, g: Graph) -> int:
    """Number of vertex subsets of g inducing a graph isomorphic to f."""
    if f.n == 0:
        return 1
    embeds = _count_injective_maps(f, g, induced=True)
    aut = automorphism_count(f)
    q, r = divmod(embeds, aut)
    if r:
        raise CountingInternalError(
            f"induced embedding count {embeds} not divisible by |Aut|={aut}"
        )
    return q


# -- copy census -------------------------------------------------------------


@dataclass
class CopyCensus:
    """Materialized list of the copies of a pattern in a host.

    ``vertex_sets`` has one row per copy (distinct subgraph), holding the
    sorted host vertices of that copy; copies sharing a vertex set appear as
    separate rows.
    """

    pattern: Graph
    host_size: int
    vertex_sets: np.ndarray  # shape (copies, |V(pattern)|), sorted rows

    @property
    def copy_count(self) -> int:
        return self.vertex_sets.shape[0]

    def span_multiplicities(self) -> dict[int, int]:
        """Histogram: multiplicity m -> number of vertex sets carrying
        exactly m copies."""
        if self.copy_count == 0:
            return {}
        _, counts = np.unique(self.vertex_sets, axis=0, return_counts=True)
        hist = {}
        for c in counts.tolist():
            hist[c] = hist.get(c, 0) + 1
        return hist


def copy_census(h: Graph, g: Graph, cap: int = DEFAULT_COPY_CAP) -> CopyCensus:
    """Enumerate the copies of h in g, up to ``cap`` rows.

    Each copy is produced once by keeping only the injective map that is
    lexicographically minimal within its Aut(h) orbit.
    """
    auts = [a for a in automorphisms(h) if a != tuple(range(h.n))]
    rows = []
    k = h.n
    for t in _iter_injective_maps(h, g, induced=False):
        minimal = True
        for sig in auts:
            for x in range(k):
                a = t[sig[x]]
                b = t[x]
                if a < b:
                    minimal = False
                    break
                if a > b:
                    break
            if not minimal:
                break
        if minimal:
            rows.append(sorted(t))
            if len(rows) > cap:
                raise CopyBudgetError(
                    f"more than {cap} copies of the pattern in the host"
                )
    if rows:
        arr = np.array(rows, dtype=np.int64)
    else:
        arr = np.empty((0, k), dtype=np.int64)
    return CopyCensus(pattern=h, host_size=g.n, vertex_sets=arr)


# -- overlap pairs -----------------------------------------------------------


def _subset_collision_sum(vertex_sets: np.ndarray, j: int, host_size: int) -> int:
    """Sum over all j-element vertex subsets u of (number of copies whose
    vertex set contains u) squared."""
    m, v = vertex_sets.shape
    if m == 0:
        return 0
    if j == 0:
        return m * m
    bits = max(host_size - 1, 1).bit_length()
    pieces = []
    use_numpy = bits * j <= 63
    for cols in combinations(range(v), j):
        if use_numpy:
            packed = np.zeros(m, dtype=np.uint64)
            for i, c in enumerate(cols):
                packed |= vertex_sets[:, c].astype(np.uint64) << np.uint64(bits * i)
            pieces.append(packed)
        else:
            sel = vertex_sets[:, cols]
            pieces.append([tuple(row) for row in sel.tolist()])
    if use_numpy:
        allp = np.concatenate(pieces)
        _, counts = np.unique(allp, return_counts=True)
        return sum(int(c) * int(c) for c in counts.tolist())
    from collections import Counter

    ctr = Counter()
    for piece in pieces:
        ctr.update(piece)
    return sum(c * c for c in ctr.values())


def overlap_pair_counts(census: CopyCensus, ts) -> dict[int, int]:
    """For each t, the number of ordered pairs of distinct copies whose
    vertex sets intersect in exactly t vertices."""
    v = census.pattern.n
    ts = sorted(set(ts))
    if any(t < 0 or t > v for t in ts):
        raise ValueError(f"overlap size must lie in [0, {v}]")
    lo = min(ts) if ts else v
    q = {}
    for j in range(lo, v + 1):
        q[j] = _subset_collision_sum(census.vertex_sets, j, census.host_size)
    total = census.copy_count
    out = {}
    for t in ts:
        inter = sum((-1) ** (j - t) * comb(j, t) * q[j] for j in range(t, v + 1))
        if t == v:
            inter -= total
        out[t] = inter
    return out


def count_overlap_pairs(h: Graph, g: Graph, t: int, cap: int = DEFAULT_COPY_CAP) -> int:
    """Ordered pairs of distinct copies of h in g sharing exactly t vertices."""
    census = copy_census(h, g, cap=cap)
    return overlap_pair_counts(census, [t])[t]


# -- pivot joins -------------------------------------------------------------


def pivot_join(h: Graph, j1, j2) -> Graph:
    """Union of h with a fresh copy of itself, identifying the a-th pivot of
    the copy with the a-th pivot of the original; parallel edges collapse."""
    j1 = tuple(j1)
    j2 = tuple(j2)
    t = len(j1)
    if len(j2) != t:
        raise ValueError("pivot tuples must have equal length")
    if not (1 <= t <= h.n):
        raise ValueError(f"pivot length must lie in [1, {h.n}]")
    for tup in (j1, j2):
        if len(set(tup)) != t:
            raise ValueError("pivot tuple has repeated vertices")
        if any(not (0 <= x < h.n) for x in tup):
            raise ValueError("pivot vertex out of range")
    gamma = {}
    for a in range(t):
        gamma[j2[a]] = j1[a]
    fresh = h.n
    for x in range(h.n):
        if x not in gamma:
            gamma[x] = fresh
            fresh += 1
    edges = set(h.edges)
    edges.update(
        (gamma[u], gamma[v]) if gamma[u] < gamma[v] else (gamma[v], gamma[u])
        for u, v in h.edges
    )
    return Graph(fresh, edges)


@dataclass
class JoinCatalog:
    """Isomorphism classes of pivot joins of a pattern, per overlap size t in
    [2, |V(pattern)|-1]. Full-overlap joins (t = |V|) are handled by overlap
    pair counting instead."""

    pattern: Graph
    classes: dict[int, tuple[Graph, ...]]

    def members(self):
        for t in sorted(self.classes):
            for rep in self.classes[t]:
                yield t, rep


def join_catalog(h: Graph) -> JoinCatalog:
    if h.n < 3:
        raise ValueError("pattern must have at least 3 vertices")
    classes = {}
    for t in range(2, h.n):
        labeled = {}
        for j1 in permutations(range(h.n), t):
            for j2 in permutations(range(h.n), t):
                g = pivot_join(h, j1, j2)
                labeled.setdefault(g.edges, g)
        reps = {}
        for g in labeled.values():
            reps.setdefault(canonical_form(g), g)
        classes[t] = tuple(reps[c] for c in sorted(reps))
    return JoinCatalog(pattern=h, classes=classes)


# -- supergraph classes --------------------------------------------------------


@dataclass
class SupergraphClasses:
    """Supergraphs of a pattern on the same vertex count, grouped by the
    number of pattern copies they carry."""

    pattern: Graph
    classes: dict[int, tuple[Graph, ...]]
    max_copies: int

    def members(self):
        for k in sorted(self.classes):
            for rep in self.classes[k]:
                yield k, rep


def supergraph_classes(h: Graph, max_missing_edges: int = 24) -> SupergraphClasses:
    if h.n > 10:
        raise ValueError("pattern too large for supergraph enumeration")
    missing = [
        (u, v)
        for u in range(h.n)
        for v in range(u + 1, h.n)
        if (u, v) not in h.edges
    ]
    if len(missing) > max_missing_edges:
        raise ValueError("pattern too large for supergraph enumeration")
    reps = {}
    for r in range(len(missing) + 1):
        for extra in combinations(missing, r):
            f = Graph(h.n, set(h.edges) | set(extra))
            reps.setdefault(canonical_form(f), f)
    classes = {}
    for f in reps.values():
        k = count_copies(h, f)
        classes.setdefault(k, []).append(f)
    for k in classes:
        classes[k] = tuple(
            sorted(classes[k], key=lambda g: (g.edge_count, canonical_form(g)))
        )
    max_k = count_copies(h, complete(h.n))
    return SupergraphClasses(pattern=h, classes=classes, max_copies=max_k)


def copy_multiplicity_counts(h: Graph, g: Graph) -> dict[int, int]:
    """For each k >= 1, the number of |V(h)|-element vertex subsets of g whose
    induced subgraph carries exactly k copies of h; computed class by class
    from the supergraph decomposition."""
    sc = supergraph_classes(h)
    out = {}
    for k in range(1, sc.max_copies + 1):
        out[k] = sum(count_induced_copies(f, g) for f in sc.classes.get(k, ()))
    return out
