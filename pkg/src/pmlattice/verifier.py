"""Runnable property catalog: every auxiliary structural claim the basis
constructions lean on, checked by exhaustion on a concrete graph.

Quantified claims are never sampled; a property either exhausts its domain
within the vertex cap or reports itself skipped.  Failures always carry a
concrete witness so a red property doubles as a refutation certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .decomposition import (barrier_of_tight_cut, brick_count,
                            find_tight_cut, is_near_brick, parity_sets)
from .errors import PreconditionViolated, TheoremFalsified, VertexCapExceeded
from .graph import (MultiGraph, boundary, contract_shore, cut_contractions,
                    is_bipartite, is_petersen, make_cut, odd_shores,
                    shore_complement, shore_index_map)
from .linalg import lattice_member
from .matchings import enumerate_perfect_matchings, matching_covered
from .polytope import (DEFAULT_VERTEX_CAP, check_cap, dim_by_rank,
                       edge_face_members, enumerate_codim2_faces,
                       enumerate_facets, face_covers_all_edges, face_members,
                       is_bvn, is_separating, members_dim, polytope_dim,
                       separating_cuts, separating_facet_defining_cuts,
                       uncross)

DEFAULT_TRIPLE_CAP = 10


@dataclass(frozen=True)
class PropertyReport:
    property_id: str
    graph_name: str
    status: str  # "pass" | "fail" | "skipped"
    certificate: dict

    def to_payload(self) -> dict:
        return {"property": self.property_id, "graph": self.graph_name,
                "status": self.status, "certificate": self.certificate}


def _p_dim(g: MultiGraph, cap: int) -> tuple[str, dict]:
    d = dim_by_rank(g)
    b = brick_count(g)
    formula = len(g.edges) - g.vertex_count + 1 - b
    cert = {"rank_dim": d, "edges": len(g.edges), "vertices": g.vertex_count,
            "bricks": b, "formula_dim": formula}
    return ("pass" if d == formula else "fail"), cert


def _p_uncross(g: MultiGraph, cap: int) -> tuple[str, dict]:
    cuts = separating_cuts(g, cap)
    checked = applicable = 0
    for i in range(len(cuts)):
        for j in range(i + 1, len(cuts)):
            x1 = cuts[i].shore_set
            x2 = cuts[j].shore_set
            if len(x1 & x2) % 2 == 0:
                x2 = shore_complement(g, x2)
            if not (x1 & x2 and x1 - x2 and x2 - x1 and shore_complement(g, x1 | x2)):
                continue
            checked += 1
            f12 = face_members(g, cuts[i].boundary) & face_members(g, cuts[j].boundary)
            if not f12 or not face_covers_all_edges(g, f12):
                continue
            applicable += 1
            _, _, report = uncross(g, x1, x2)
            if not (report.no_edge_between_differences and report.identity_holds
                    and report.face_intersection_equal):
                return "fail", {"shore1": sorted(x1), "shore2": sorted(x2),
                                "no_edge": report.no_edge_between_differences,
                                "identity": report.identity_holds,
                                "faces_equal": report.face_intersection_equal}
    return "pass", {"crossing_pairs": checked, "face_condition_pairs": applicable}


def _face_of_face_exposed(g: MultiGraph, members: frozenset[int]) -> tuple[int, int]:
    """Facets of the face: (count, edge-exposed count)."""
    d0 = members_dim(g, members)
    subs: set[frozenset[int]] = set()
    edge_faces: set[frozenset[int]] = set()
    for eid in g.edge_ids:
        sub = members & edge_face_members(g, eid)
        if members_dim(g, sub) == d0 - 1:
            subs.add(sub)
            edge_faces.add(sub)
    for shore in odd_shores(g):
        sub = members & face_members(g, boundary(g, shore))
        if members_dim(g, sub) == d0 - 1:
            subs.add(sub)
    return len(subs), sum(1 for s in subs if s in edge_faces)


def _p_bvncontract(g: MultiGraph, cap: int) -> tuple[str, dict]:
    applicable = 0
    for cut in separating_cuts(g, cap):
        ks, kc = cut_contractions(g, cut.shore_set)
        if not (is_bvn(ks, cap)[0] and is_bvn(kc, cap)[0]):
            continue
        applicable += 1
        total, exposed = _face_of_face_exposed(g, face_members(g, cut.boundary))
        if total != exposed:
            return "fail", {"shore": list(cut.shore), "facets": total,
                            "edge_exposed": exposed}
    return "pass", {"bvn_bvn_cuts": applicable}


def _p_brickcount(g: MultiGraph, cap: int) -> tuple[str, dict]:
    d = polytope_dim(g)
    b = brick_count(g)
    for cut in separating_cuts(g, cap):
        codim = d - members_dim(g, face_members(g, cut.boundary))
        ks, kc = cut_contractions(g, cut.shore_set)
        if brick_count(ks) + brick_count(kc) != b + codim:
            return "fail", {"shore": list(cut.shore), "codim": codim,
                            "b_sides": [brick_count(ks), brick_count(kc)], "b": b}
    return "pass", {"separating_cuts": len(separating_cuts(g, cap))}


def _p_nearbrick(g: MultiGraph, cap: int) -> tuple[str, dict]:
    if not is_near_brick(g):
        return "pass", {"vacuous": "not a near-brick"}
    d = polytope_dim(g)
    checked = 0
    for cut in separating_cuts(g, cap):
        checked += 1
        fdi = members_dim(g, face_members(g, cut.boundary)) == d - 1
        ks, kc = cut_contractions(g, cut.shore_set)
        both_nb = brick_count(ks) == 1 and brick_count(kc) == 1
        if fdi != both_nb:
            return "fail", {"shore": list(cut.shore), "facet_defining": fdi,
                            "both_near_bricks": both_nb}
    return "pass", {"separating_cuts": checked}


def _tight_cuts(g: MultiGraph):
    ms = enumerate_perfect_matchings(g)
    for shore in odd_shores(g):
        edges = boundary(g, shore)
        if all(len(m.edge_ids & edges) == 1 for m in ms):
            yield make_cut(g, shore)


def _p_barrier(g: MultiGraph, cap: int) -> tuple[str, dict]:
    if not is_near_brick(g):
        return "pass", {"vacuous": "not a near-brick"}
    check_cap(g, cap)
    barriers = []
    for cut in _tight_cuts(g):
        b = barrier_of_tight_cut(g, cut)  # raises on structural failure
        barriers.append(sorted(b))
    return "pass", {"tight_cuts": len(barriers), "barriers": barriers}


def _p_fdilift(g: MultiGraph, cap: int) -> tuple[str, dict]:
    if not is_near_brick(g):
        return "pass", {"vacuous": "not a near-brick"}
    check_cap(g, cap)
    d = polytope_dim(g)
    lifted = 0
    for cut in _tight_cuts(g):
        for x in (cut.shore_set, shore_complement(g, cut.shore_set)):
            collapse_x = contract_shore(g, shore_complement(g, x))
            keep_x = contract_shore(g, x)
            if not is_bipartite(collapse_x)[0] or is_bvn(keep_x, cap)[0]:
                continue
            c_vertex = len(x)
            back = {new: old for old, new in shore_index_map(x).items()}
            for dcut in separating_facet_defining_cuts(keep_x, cap):
                side = set(dcut.shore)
                if c_vertex in side:
                    side = set(range(keep_x.vertex_count)) - side
                y = frozenset(back[v] for v in side)
                lifted += 1
                mem = face_members(g, boundary(g, y))
                ok = (members_dim(g, mem) == d - 1
                      and is_separating(g, tuple(sorted(y))))
                if not ok:
                    return "fail", {"tight_shore": list(cut.shore),
                                    "inner_shore": sorted(y)}
    return "pass", {"lifted_cuts": lifted}


def _bipartite_middle(g: MultiGraph, small: frozenset[int], big: frozenset[int]) -> bool:
    h1 = contract_shore(g, big)
    idx = shore_index_map(big)
    c2 = len(big)
    mapped_small = frozenset(idx[v] for v in small)
    keep = frozenset(range(h1.vertex_count)) - mapped_small
    h2 = contract_shore(h1, keep)
    bip, parts = is_bipartite(h2)
    if not bip or not matching_covered(h2):
        return False
    c1_new = len(keep)
    c2_new = shore_index_map(keep)[c2]
    return (c1_new in parts[0]) != (c2_new in parts[0])


def _p_equiv(g: MultiGraph, cap: int) -> tuple[str, dict]:
    if not is_near_brick(g):
        return "pass", {"vacuous": "not a near-brick"}
    d = polytope_dim(g)
    groups: dict[frozenset[int], list] = {}
    for cut in separating_cuts(g, cap):
        mem = face_members(g, cut.boundary)
        if members_dim(g, mem) == d - 1:
            groups.setdefault(mem, []).append(cut)
    pairs = nested = 0
    ms = enumerate_perfect_matchings(g)
    for cuts in groups.values():
        for i in range(len(cuts)):
            for j in range(i + 1, len(cuts)):
                x1 = cuts[i].shore_set
                x2 = cuts[j].shore_set
                if len(x1 & x2) % 2 == 0:
                    x2 = shore_complement(g, x2)
                pairs += 1
                if any(len(m.edge_ids & cuts[i].boundary)
                       != len(m.edge_ids & cuts[j].boundary) for m in ms):
                    return "fail", {"shore1": sorted(x1), "shore2": sorted(x2),
                                    "reason": "same-facet cuts not equivalent"}
                if x1 < x2 or x2 < x1:
                    nested += 1
                    small, big = (x1, x2) if x1 < x2 else (x2, x1)
                    if not _bipartite_middle(g, small, big):
                        return "fail", {"small": sorted(small), "big": sorted(big),
                                        "reason": "middle contraction not bipartite with "
                                                  "contraction vertices on opposite sides"}
    return "pass", {"same_facet_pairs": pairs, "nested_pairs": nested}


def _p_triple(g: MultiGraph, cap: int) -> tuple[str, dict]:
    check_cap(g, cap)
    n = g.vertex_count
    ms = enumerate_perfect_matchings(g)
    edge_pos = {eid: i for i, eid in enumerate(g.edge_ids)}
    full_edges = (1 << len(g.edge_ids)) - 1
    m_edge_masks = []
    m_pairs = []
    ends = g.endpoints()
    for m in ms:
        acc = 0
        for eid in m.edge_ids:
            acc |= 1 << edge_pos[eid]
        m_edge_masks.append(acc)
        m_pairs.append([ends[eid] for eid in m.edge_ids])

    member_cache: dict[int, int] = {}

    def members_of(mask: int) -> int:
        got = member_cache.get(mask)
        if got is None:
            got = 0
            for i, pairs in enumerate(m_pairs):
                crossings = 0
                for u, v in pairs:
                    crossings += ((mask >> u) & 1) != ((mask >> v) & 1)
                    if crossings > 1:
                        break
                if crossings == 1:
                    got |= 1 << i
            member_cache[mask] = got
        return got

    cover_cache: dict[int, bool] = {}

    def covers_all(member_mask: int) -> bool:
        got = cover_cache.get(member_mask)
        if got is None:
            acc = 0
            mm = member_mask
            while mm:
                low = (mm & -mm).bit_length() - 1
                acc |= m_edge_masks[low]
                mm &= mm - 1
            got = acc == full_edges
            cover_cache[member_mask] = got
        return got

    full_vertices = (1 << n) - 1
    odd_masks = [m for m in range(1, full_vertices)
                 if bin(m).count("1") % 2 == 1]
    checked = 0
    for m2 in odd_masks:
        comp = full_vertices ^ m2
        # odd proper nonempty submasks of m2 (the X1 candidates)
        x1s = []
        s = (m2 - 1) & m2
        while s:
            if bin(s).count("1") % 2 == 1:
                x1s.append(s)
            s = (s - 1) & m2
        # odd proper supersets of m2 (the X3 candidates)
        x3s = []
        t = (comp - 1) & comp
        while t:
            if bin(m2 | t).count("1") % 2 == 1:
                x3s.append(m2 | t)
            t = (t - 1) & comp
        if not x1s or not x3s:
            continue
        f2 = members_of(m2)
        for m1 in x1s:
            f1 = members_of(m1)
            f21 = f2 & f1
            for m3 in x3s:
                # canonical representative under complement-reversal
                if (m1, m2, m3) > (full_vertices ^ m3, full_vertices ^ m2,
                                   full_vertices ^ m1):
                    continue
                checked += 1
                f23 = f2 & members_of(m3)
                if f21 != f23 or not f23:
                    continue
                if not (f2 & ~f1) and not (f2 & ~members_of(m3)):
                    continue
                if covers_all(f23):
                    return "fail", {
                        "x1": [v for v in range(n) if (m1 >> v) & 1],
                        "x2": [v for v in range(n) if (m2 >> v) & 1],
                        "x3": [v for v in range(n) if (m3 >> v) & 1]}
    return "pass", {"canonical_triples": checked}


def _is_brick(g: MultiGraph) -> bool:
    return find_tight_cut(g) is None and not is_bipartite(g)[0]


def _p_lemma(g: MultiGraph, cap: int) -> tuple[str, dict]:
    if not _is_brick(g):
        return "pass", {"vacuous": "not a brick"}
    codim2 = enumerate_codim2_faces(g, cap)
    if not all(f.exposed_by_edges for f in codim2):
        return "pass", {"vacuous": "a codim-2 face is not edge-exposed"}
    if g.vertex_count > 10:
        return "fail", {"reason": "premise holds but |V| > 10",
                        "vertices": g.vertex_count}
    if is_petersen(g):
        return "pass", {"branch": "petersen", "vertices": g.vertex_count}
    if is_bvn(g, cap)[0]:
        return "pass", {"branch": "bvn", "vertices": g.vertex_count}
    ms = enumerate_perfect_matchings(g)
    for cut in separating_facet_defining_cuts(g, cap):
        for m in ms:
            if len(m.edge_ids & cut.boundary) == 3:
                return "pass", {"branch": "three_intersection",
                                "shore": list(cut.shore),
                                "matching": sorted(m.edge_ids)}
    return "fail", {"reason": "trichotomy exhausted with no 3-intersecting pair"}


def _p_lemma_count(g: MultiGraph, cap: int) -> tuple[str, dict]:
    if not _is_brick(g):
        return "pass", {"vacuous": "not a brick"}
    d = polytope_dim(g)
    if d < 2:
        return "pass", {"vacuous": "dimension below 2"}
    facets = enumerate_facets(g, cap)
    codim2 = enumerate_codim2_faces(g, cap)
    f, t, e = len(facets), len(codim2), len(g.edges)
    # every codim-2 face lies in exactly two facets
    for face in codim2:
        owners = sum(1 for fc in facets if face.member_matchings <= fc.member_matchings)
        if owners != 2:
            return "fail", {"reason": "codim-2 face not in exactly two facets",
                            "members": sorted(face.member_matchings), "owners": owners}
    adjacency = []
    for fc in facets:
        adjacency.append(sum(
            1 for other in facets if other is not fc
            and any(face.member_matchings <= fc.member_matchings
                    and face.member_matchings <= other.member_matchings
                    for face in codim2)))
    cert = {"edges": e, "t": t, "f": f, "d": d,
            "min_facet_adjacency": min(adjacency) if adjacency else 0}
    if f < d + 1 or 2 * t < f * d or (adjacency and min(adjacency) < d):
        return "fail", cert
    premise = all(face.exposed_by_edges for face in codim2)
    cert["premise_all_codim2_edge_exposed"] = premise
    if premise and not (e >= t and 2 * t >= f * d and f * d >= 2 * comb(d + 1, 2)):
        return "fail", cert
    return "pass", cert


def _p_2x(g: MultiGraph, cap: int) -> tuple[str, dict]:
    from .basis import matching_lattice, matching_saturation

    psets = parity_sets(g)
    if not psets:
        return "pass", {"vacuous": "no Petersen brick"}
    lat = matching_lattice(g)
    sat = matching_saturation(g)
    for row in sat.basis:
        if lattice_member(lat, [2 * x for x in row]) is None:
            return "fail", {"vector": list(row)}
    return "pass", {"saturation_rank": sat.rank, "parity_sets": len(psets)}


_CHECKS = {
    "P-DIM": _p_dim,
    "P-UNCROSS": _p_uncross,
    "P-BVNCONTRACT": _p_bvncontract,
    "P-BRICKCOUNT": _p_brickcount,
    "P-NEARBRICK": _p_nearbrick,
    "P-BARRIER": _p_barrier,
    "P-FDILIFT": _p_fdilift,
    "P-EQUIV": _p_equiv,
    "P-TRIPLE": _p_triple,
    "P-LEMMA": _p_lemma,
    "P-LEMMA-COUNT": _p_lemma_count,
    "P-2X": _p_2x,
}

PROPERTY_IDS: tuple[str, ...] = tuple(_CHECKS)


def verify_property(g: MultiGraph, property_id: str, graph_name: str = "graph",
                    max_vertices: int = DEFAULT_VERTEX_CAP,
                    triple_cap: int = DEFAULT_TRIPLE_CAP) -> PropertyReport:
    """Run one catalog property; unknown ids raise, caps produce skips."""
    if property_id not in _CHECKS:
        raise PreconditionViolated("unknown_property", f"unknown property {property_id!r}")
    if not matching_covered(g):
        raise PreconditionViolated("not_matching_covered")
    cap = triple_cap if property_id == "P-TRIPLE" else max_vertices
    try:
        status, cert = _CHECKS[property_id](g, cap)
    except VertexCapExceeded as exc:
        return PropertyReport(property_id, graph_name, "skipped",
                              {"cap": exc.cap, "vertices": exc.vertices})
    except TheoremFalsified as exc:
        return PropertyReport(property_id, graph_name, "fail",
                              {"claim": exc.claim, **exc.certificate})
    return PropertyReport(property_id, graph_name, status, cert)


def verify_all(g: MultiGraph, graph_name: str = "graph",
               max_vertices: int = DEFAULT_VERTEX_CAP,
               triple_cap: int = DEFAULT_TRIPLE_CAP) -> list[PropertyReport]:
    return [verify_property(g, pid, graph_name, max_vertices, triple_cap)
            for pid in PROPERTY_IDS]
