"""Multigraph core: stable edge identities, shores and cuts, contraction,
simplification, and small-graph recognition.

Edge identity is the primary key everywhere.  Contraction never renumbers
surviving edges, which is what lets vectors indexed by edge id be composed
across cut-contractions later on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import PreconditionViolated

Edge = tuple[int, int, int]  # (edge_id, u, v)


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph on vertices ``0..vertex_count-1``.

    Parallel edges are distinct entries with distinct ids; self-loops are
    rejected at construction.  Immutable and hashable, so per-graph results
    can be memoized.
    """

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        seen: set[int] = set()
        for eid, u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u} (edge {eid})")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {eid} endpoint out of range")
            if eid in seen:
                raise ValueError(f"duplicate edge id {eid}")
            seen.add(eid)

    @staticmethod
    def from_pairs(vertex_count: int, pairs: Iterable[tuple[int, int]]) -> "MultiGraph":
        """Build a graph with ids 0..m-1 assigned in the order given."""
        return MultiGraph(vertex_count, tuple((i, u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges)

    def edge_by_id(self, eid: int) -> Edge:
        for e in self.edges:
            if e[0] == eid:
                return e
        raise KeyError(f"no edge with id {eid}")

    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex incidence list of (edge_id, other endpoint), id order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for eid, u, v in sorted(self.edges):
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for _, u, w in self.edges if u == v or w == v)

    def vertices(self) -> range:
        return range(self.vertex_count)


@dataclass(frozen=True)
class Shore:
    """A nonempty proper subset of the vertex set; one side of a cut."""

    vertex_set: frozenset[int]

    @property
    def parity(self) -> int:
        return len(self.vertex_set) % 2

    def __len__(self) -> int:
        return len(self.vertex_set)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.vertex_set))


def make_shore(g: MultiGraph, vertices: Iterable[int]) -> Shore:
    vs = frozenset(vertices)
    if not vs or len(vs) >= g.vertex_count:
        raise PreconditionViolated("bad_shore", "shore must be a nonempty proper subset")
    if not all(0 <= v < g.vertex_count for v in vs):
        raise PreconditionViolated("bad_shore", "shore vertex out of range")
    return Shore(vs)


def shore_complement(g: MultiGraph, shore: Shore | frozenset[int]) -> frozenset[int]:
    vs = shore.vertex_set if isinstance(shore, Shore) else shore
    return frozenset(range(g.vertex_count)) - vs


def boundary(g: MultiGraph, vertices: Iterable[int]) -> frozenset[int]:
    """Edge ids with exactly one endpoint inside ``vertices``."""
    vs = set(vertices)
    return frozenset(eid for eid, u, v in g.edges if (u in vs) != (v in vs))


@dataclass(frozen=True)
class Cut:
    """An edge cut delta(X) with its canonical shore.

    The stored shore is the lexicographically smaller of X and its
    complement (as sorted vertex tuples), so delta(X) and delta(V-X)
    compare equal.
    """

    shore: tuple[int, ...]
    boundary: frozenset[int]

    @property
    def shore_set(self) -> frozenset[int]:
        return frozenset(self.shore)

    def is_odd(self) -> bool:
        return len(self.shore) % 2 == 1


def make_cut(g: MultiGraph, vertices: Iterable[int]) -> Cut:
    vs = frozenset(vertices)
    if not vs or len(vs) >= g.vertex_count:
        raise PreconditionViolated("bad_shore", "cut shore must be a nonempty proper subset")
    comp = shore_complement(g, vs)
    side = min(tuple(sorted(vs)), tuple(sorted(comp)))
    return Cut(side, boundary(g, side))


def odd_shores(g: MultiGraph, *, trivial: bool = False) -> Iterator[tuple[int, ...]]:
    """Canonical odd shores in (size, lex) order.

    Canonical means the side containing vertex 0, which is the
    lexicographically smaller side.  ``trivial`` admits |X| = 1 and
    |X| = n-1 shores; by default only 1 < |X| < n-1.
    """
    n = g.vertex_count
    lo = 1 if trivial else 3
    hi = n - 1 if trivial else n - 2
    for size in range(lo, hi + 1, 2):
        if size % 2 == 0:
            continue
        for rest in itertools.combinations(range(1, n), size - 1):
            yield (0,) + rest


def contract_shore(g: MultiGraph, shore: Shore | Iterable[int]) -> MultiGraph:
    """Collapse the complement of ``shore`` to a single contraction vertex.

    Vertices of the shore are renumbered 0..k-1 in sorted order and the
    contraction vertex gets index k (use :func:`shore_index_map`).  Edges
    inside the complement are deleted; all surviving edges keep their ids,
    so parallel edges created by the contraction remain distinct.
    """
    vs = shore.vertex_set if isinstance(shore, Shore) else frozenset(shore)
    if not vs or len(vs) >= g.vertex_count:
        raise PreconditionViolated("bad_shore", "contraction shore must be a nonempty proper subset")
    index = shore_index_map(vs)
    c = len(vs)
    new_edges = []
    for eid, u, v in g.edges:
        iu, iv = u in vs, v in vs
        if not iu and not iv:
            continue
        nu = index[u] if iu else c
        nv = index[v] if iv else c
        new_edges.append((eid, nu, nv))
    return MultiGraph(c + 1, tuple(new_edges))


def shore_index_map(shore: Iterable[int]) -> dict[int, int]:
    """Old-vertex -> new-vertex map used by :func:`contract_shore`."""
    return {v: i for i, v in enumerate(sorted(shore))}


def cut_contractions(g: MultiGraph, vertices: Iterable[int]) -> tuple[MultiGraph, MultiGraph]:
    """Both cut-contractions for the cut delta(X).

    Returns ``(keep_shore, keep_complement)``: the first collapses the
    complement of X (retaining X), the second collapses X.
    """
    vs = frozenset(vertices)
    return contract_shore(g, vs), contract_shore(g, shore_complement(g, vs))


def simplify(g: MultiGraph) -> tuple[MultiGraph, dict[int, tuple[int, ...]]]:
    """One representative edge (lowest id) per parallel class.

    Returns the simple graph and a map from representative id to the full
    sorted tuple of class member ids.
    """
    classes: dict[tuple[int, int], list[int]] = {}
    for eid, u, v in g.edges:
        key = (u, v) if u < v else (v, u)
        classes.setdefault(key, []).append(eid)
    kept = []
    class_map: dict[int, tuple[int, ...]] = {}
    for (u, v), ids in classes.items():
        rep = min(ids)
        kept.append((rep, u, v))
        class_map[rep] = tuple(sorted(ids))
    kept.sort()
    return MultiGraph(g.vertex_count, tuple(kept)), class_map


def is_bipartite(g: MultiGraph) -> tuple[bool, tuple[frozenset[int], frozenset[int]] | None]:
    """2-colorability test; on success returns the bipartition.

    The part containing the least vertex of each component is put in the
    first class, so the returned bipartition is deterministic.
    """
    color: dict[int, int] = {}
    adj = g.adjacency()
    for start in g.vertices():
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for _, w in adj[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False, None
    part0 = frozenset(v for v, c in color.items() if c == 0)
    part1 = frozenset(g.vertices()) - part0
    return True, (part0, part1)


def girth(g: MultiGraph) -> int | float:
    """Length of a shortest cycle; ``inf`` for forests.

    Parallel edges form 2-cycles.  BFS from every vertex on the
    simplification otherwise.
    """
    simple, classes = simplify(g)
    if any(len(ids) > 1 for ids in classes.values()):
        return 2
    best: int | float = float("inf")
    adj = simple.adjacency()
    for root in simple.vertices():
        dist = {root: 0}
        parent_edge = {root: -1}
        queue = [root]
        while queue:
            nxt = []
            for v in queue:
                for eid, w in adj[v]:
                    if eid == parent_edge[v]:
                        continue
                    if w in dist:
                        best = min(best, dist[v] + dist[w] + 1)
                    else:
                        dist[w] = dist[v] + 1
                        parent_edge[w] = eid
                        nxt.append(w)
            queue = nxt
    return best


def components_minus(g: MultiGraph, removed: Iterable[int]) -> list[tuple[int, ...]]:
    """Connected components of G minus a vertex set, ordered by least vertex."""
    gone = set(removed)
    adj = g.adjacency()
    seen: set[int] = set(gone)
    comps = []
    for start in g.vertices():
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop()
            for _, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return comps


def is_connected(g: MultiGraph) -> bool:
    if g.vertex_count == 0:
        return True
    return len(components_minus(g, ())) == 1


# --- Petersen recognition -------------------------------------------------

PETERSEN_PAIRS: tuple[tuple[int, int], ...] = (
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
)


def petersen_graph() -> MultiGraph:
    """The Petersen graph: outer 5-cycle, spokes, inner pentagram."""
    return MultiGraph.from_pairs(10, PETERSEN_PAIRS)


def _adjacency_sets(g: MultiGraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.vertex_count)]
    for _, u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def graph_isomorphic(g1: MultiGraph, g2: MultiGraph) -> bool:
    """Backtracking isomorphism test for simple graphs (desk scale).

    Multigraphs should be simplified first; only the adjacency relation is
    compared.
    """
    n = g1.vertex_count
    if n != g2.vertex_count:
        return False
    a1, a2 = _adjacency_sets(g1), _adjacency_sets(g2)
    deg1 = sorted(len(s) for s in a1)
    deg2 = sorted(len(s) for s in a2)
    if deg1 != deg2:
        return False

    candidates = [[v for v in range(n) if len(a2[v]) == len(a1[u])] for u in range(n)]
    order = sorted(range(n), key=lambda u: len(candidates[u]))
    mapping = [-1] * n
    used = [False] * n

    def extend(idx: int) -> bool:
        if idx == n:
            return True
        u = order[idx]
        for v in candidates[u]:
            if used[v]:
                continue
            # adjacency with already-mapped vertices must match both ways
            ok = True
            for w in range(n):
                if mapping[w] == -1:
                    continue
                if (mapping[w] in a2[v]) != (w in a1[u]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used[v] = True
            if extend(idx + 1):
                return True
            mapping[u] = -1
            used[v] = False
        return False

    return extend(0)


@lru_cache(maxsize=None)
def is_petersen(g: MultiGraph) -> bool:
    """True iff the simplification of ``g`` is the Petersen graph.

    Cheap invariants (10 vertices, 3-regular, girth 5) filter first; an
    explicit isomorphism against the hardcoded adjacency confirms.
    """
    simple, _ = simplify(g)
    if simple.vertex_count != 10 or len(simple.edges) != 15:
        return False
    if any(simple.degree(v) != 3 for v in simple.vertices()):
        return False
    if girth(simple) != 5:
        return False
    return graph_isomorphic(simple, petersen_graph())


def five_cycles(g: MultiGraph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All simple 5-cycles, once each, as (vertex tuple, edge id tuple).

    Cycles are canonical: least vertex first, direction chosen so the
    second vertex is the smaller neighbour.  Each consecutive pair
    contributes its lowest-id parallel edge.
    """
    simple, _ = simplify(g)
    adj = _adjacency_sets(simple)
    rep: dict[tuple[int, int], int] = {}
    for eid, u, v in simple.edges:
        rep[(u, v)] = eid
        rep[(v, u)] = eid

    found = []
    n = simple.vertex_count
    for a in range(n):
        for b in sorted(adj[a]):
            if b < a:
                continue
            for c in sorted(adj[b]):
                if c <= a or c == b:
                    continue
                for d in sorted(adj[c]):
                    if d <= a or d in (b, c):
                        continue
                    for e in sorted(adj[d]):
                        if e <= a or e in (b, c, d):
                            continue
                        if a in adj[e] and b < e:  # canonical direction
                            cyc = (a, b, c, d, e)
                            eids = tuple(rep[(cyc[i], cyc[(i + 1) % 5])] for i in range(5))
                            found.append((cyc, eids))
    found.sort()
    return found
