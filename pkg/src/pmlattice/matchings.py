"""Perfect matching enumeration, matching-covered testing, matching surgery
across cuts, and integer decomposition of points of kP.

Enumeration is exhaustive backtracking over the least-index uncovered
vertex; corpus graphs stay small enough that determinism beats asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import PreconditionViolated, TheoremFalsified
from .graph import Cut, MultiGraph, cut_contractions, is_connected


@dataclass(frozen=True)
class PerfectMatching:
    """A perfect matching as a set of edge ids.

    The sorted id tuple doubles as the canonical sort key; incidence
    vectors are produced against a graph's edge order on demand.
    """

    edge_ids: frozenset[int]

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_ids))

    def incidence_on(self, g: MultiGraph) -> tuple[int, ...]:
        return tuple(1 if eid in self.edge_ids else 0 for eid in g.edge_ids)

    def crossings(self, cut: Cut | frozenset[int]) -> int:
        edges = cut.boundary if isinstance(cut, Cut) else cut
        return len(self.edge_ids & edges)

    def __contains__(self, eid: int) -> bool:
        return eid in self.edge_ids


def incidence_vectors(g: MultiGraph, matchings: Iterable[PerfectMatching]) -> list[tuple[int, ...]]:
    return [m.incidence_on(g) for m in matchings]


@lru_cache(maxsize=None)
def enumerate_perfect_matchings(g: MultiGraph) -> tuple[PerfectMatching, ...]:
    """All perfect matchings, ordered lexicographically by sorted id tuple."""
    n = g.vertex_count
    if n % 2:
        return ()
    adj = g.adjacency()
    covered = [False] * n
    chosen: list[int] = []
    out: list[frozenset[int]] = []

    def extend(lo: int) -> None:
        v = lo
        while v < n and covered[v]:
            v += 1
        if v == n:
            out.append(frozenset(chosen))
            return
        covered[v] = True
        for eid, w in adj[v]:
            if not covered[w]:
                covered[w] = True
                chosen.append(eid)
                extend(v + 1)
                chosen.pop()
                covered[w] = False
        covered[v] = False

    extend(0)
    matchings = [PerfectMatching(s) for s in out]
    matchings.sort(key=PerfectMatching.key)
    return tuple(matchings)


def is_matching_covered(g: MultiGraph) -> tuple[bool, frozenset[int]]:
    """Whether g is connected and every edge lies in a perfect matching.

    Returns the verdict together with the set of uncovered edge ids.
    """
    if g.vertex_count == 0 or not g.edges:
        return False, frozenset(g.edge_ids)
    matchings = enumerate_perfect_matchings(g)
    used: set[int] = set()
    for m in matchings:
        used |= m.edge_ids
    uncovered = frozenset(g.edge_ids) - used
    if not matchings or uncovered or not is_connected(g):
        return False, uncovered
    return True, frozenset()


def matching_covered(g: MultiGraph) -> bool:
    return is_matching_covered(g)[0]


def require_matching_covered(g: MultiGraph) -> None:
    if not is_matching_covered(g)[0]:
        raise PreconditionViolated("not_matching_covered")


def _is_perfect_matching_of(g: MultiGraph, edge_ids: frozenset[int]) -> bool:
    ends = g.endpoints()
    if not edge_ids <= set(ends):
        return False
    covered: set[int] = set()
    for eid in edge_ids:
        u, v = ends[eid]
        if u in covered or v in covered:
            return False
        covered.update((u, v))
    return len(covered) == g.vertex_count


def extend_across_cut(g: MultiGraph, cut: Cut, inner: PerfectMatching) -> PerfectMatching:
    """Extend a perfect matching of one cut-contraction to all of g.

    ``inner`` must be a perfect matching of one of the two contractions;
    it then uses exactly one cut edge f, and the other side is completed
    with the first (enumeration order) matching of the other contraction
    that also uses f.
    """
    keep_shore, keep_comp = cut_contractions(g, cut.shore_set)
    if not (matching_covered(keep_shore) and matching_covered(keep_comp)):
        raise PreconditionViolated("not_separating", "cut is not separating")
    if _is_perfect_matching_of(keep_shore, inner.edge_ids):
        other = keep_comp
    elif _is_perfect_matching_of(keep_comp, inner.edge_ids):
        other = keep_shore
    else:
        raise PreconditionViolated("bad_inner", "inner is not a matching of either contraction")
    through = inner.edge_ids & cut.boundary
    if len(through) != 1:
        raise PreconditionViolated("bad_inner", "inner must use exactly one cut edge")
    f = next(iter(through))
    for cand in enumerate_perfect_matchings(other):
        if f in cand:
            result = PerfectMatching(inner.edge_ids | cand.edge_ids)
            if not _is_perfect_matching_of(g, result.edge_ids):
                raise TheoremFalsified("cut extension produced a non-matching", {
                    "shore": list(cut.shore), "inner": sorted(inner.edge_ids),
                    "completion": sorted(cand.edge_ids)})
            return result
    raise TheoremFalsified("no completion through the inner cut edge", {
        "shore": list(cut.shore), "inner": sorted(inner.edge_ids), "cut_edge": f})


def idp_decompose(g: MultiGraph, x: Mapping[int, int], k: int) -> list[PerfectMatching]:
    """Write an integer point of kP as a sum of k perfect matchings.

    Preconditions: x non-negative integral with x(delta(v)) = k at every
    vertex, and g Birkhoff-von Neumann.  Each round removes the
    lexicographically first perfect matching inside the support of the
    remainder; failure to find one would falsify the decomposition claim.
    """
    from .polytope import is_bvn  # local import; polytope builds on this module

    if k <= 0:
        raise PreconditionViolated("bad_k", "k must be a positive integer")
    ids = set(g.edge_ids)
    if set(x) - ids:
        raise PreconditionViolated("bad_vector", "vector has unknown edge ids")
    vals = {eid: int(x.get(eid, 0)) for eid in ids}
    if any(v < 0 for v in vals.values()):
        raise PreconditionViolated("bad_vector", "vector has a negative entry")
    deg = [0] * g.vertex_count
    for eid, u, v in g.edges:
        deg[u] += vals[eid]
        deg[v] += vals[eid]
    if any(d != k for d in deg):
        raise PreconditionViolated("bad_vector", f"vertex degrees under x must all equal {k}")
    if not is_bvn(g)[0]:
        raise PreconditionViolated("bvn", "graph is not Birkhoff-von Neumann")

    remaining = dict(vals)
    out: list[PerfectMatching] = []
    for step in range(k):
        support = tuple(e for e in g.edges if remaining[e[0]] >= 1)
        sub = MultiGraph(g.vertex_count, support)
        found = enumerate_perfect_matchings(sub)
        if not found:
            raise TheoremFalsified("no perfect matching inside the support of x", {
                "step": step, "remaining": {str(e): v for e, v in sorted(remaining.items())}})
        m = found[0]
        out.append(m)
        for eid in m.edge_ids:
            remaining[eid] -= 1
    if any(remaining.values()):
        raise TheoremFalsified("decomposition left a nonzero remainder", {
            "remaining": {str(e): v for e, v in sorted(remaining.items())}})
    return out
