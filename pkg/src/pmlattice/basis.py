"""Basis construction: the merger (composition) operation across separating
cuts with exact coefficient transfer, the search for a matching meeting a
separating facet-defining cut three times, bases for near-bricks with a
Petersen brick, and the integral / lattice basis constructions with their
mod-2 characterization of the matching lattice.

Everything here returns perfect matchings only; the integer span checks at
the end of each construction are part of the contract, not optional
debugging.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .decomposition import (brick_count, canonical_parity_cycle,
                            find_tight_cut, petersen_bricks, parity_sets)
from .errors import PreconditionViolated, TheoremFalsified
from .graph import (Cut, MultiGraph, boundary, contract_shore,
                    cut_contractions, five_cycles, is_petersen, make_cut,
                    odd_shores, shore_complement, shore_index_map, simplify)
from .linalg import (Lattice, gf2_kernel, hnf, lattice_equal, lattice_index,
                     lattice_member, rank, saturation)
from .matchings import (PerfectMatching, _is_perfect_matching_of,
                        enumerate_perfect_matchings, incidence_vectors,
                        require_matching_covered)
from .polytope import (DEFAULT_VERTEX_CAP, cuts_equivalent, dim_by_rank,
                       face_members, is_bvn, is_separating, members_dim,
                       separating_facet_defining_cuts)


@dataclass(frozen=True)
class Basis:
    """An ordered list of matching incidence vectors forming a basis.

    ``kind`` records the strongest verified property: "linear" (a basis of
    lin(P)), "lattice" (integer span is the matching lattice), "integral"
    (integer span is all integer points of lin(P)).
    """

    graph: MultiGraph
    elements: tuple[PerfectMatching, ...]
    kind: str

    def vectors(self) -> list[tuple[int, ...]]:
        return incidence_vectors(self.graph, self.elements)


def _validate_side_basis(b: Basis) -> None:
    if b.kind not in ("linear", "lattice", "integral"):
        raise PreconditionViolated("bad_basis", f"unknown basis kind {b.kind!r}")
    expected = dim_by_rank(b.graph) + 1
    if len(b.elements) != expected:
        raise PreconditionViolated(
            "bad_basis", f"basis has {len(b.elements)} elements, needs 1+dim = {expected}")
    for m in b.elements:
        if not _is_perfect_matching_of(b.graph, m.edge_ids):
            raise PreconditionViolated("bad_basis", "element is not a perfect matching of its graph")
    if rank(b.vectors()) != len(b.elements):
        raise PreconditionViolated("bad_basis", "basis elements are linearly dependent")


@lru_cache(maxsize=None)
def pm_linear_basis(g: MultiGraph) -> Basis:
    """Greedy linear basis of lin(P(G)) from the matching enumeration."""
    require_matching_covered(g)
    picked: list[PerfectMatching] = []
    vecs: list[tuple[int, ...]] = []
    for m in enumerate_perfect_matchings(g):
        v = m.incidence_on(g)
        if rank(vecs + [v]) > len(vecs):
            picked.append(m)
            vecs.append(v)
    if len(picked) != dim_by_rank(g) + 1:
        raise TheoremFalsified("matchings span lin(P(G))", {
            "picked": len(picked), "dim": dim_by_rank(g)})
    return Basis(g, tuple(picked), "linear")


@dataclass(frozen=True)
class MergeContext:
    """Everything needed to transfer coefficients through a merge."""

    graph: MultiGraph
    cut: Cut
    b1: Basis
    b2: Basis
    cut_edges: tuple[int, ...]
    i_orders: tuple[tuple[int, ...], ...]  # aligned with cut_edges
    j_orders: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MergeResult:
    basis: Basis
    zstar: int | None
    context: MergeContext


def _only_cut_edge(m: PerfectMatching, cut_boundary: frozenset[int]) -> int:
    through = m.edge_ids & cut_boundary
    if len(through) != 1:
        raise PreconditionViolated("bad_basis", "contraction matching must use exactly one cut edge")
    return next(iter(through))


def merge_bases(g: MultiGraph, cut: Cut, b1: Basis, b2: Basis,
                pin: int | PerfectMatching | None = None) -> MergeResult:
    """Compose bases of the two cut-contractions into a basis of the cut's
    face, pairing elements through shared cut edges.

    For each cut edge e, with I_e / J_e the element indices using e, the
    outputs are b1[i_1] composed with every b2[j_t], then every further
    b1[i_{1+t}] composed with b2[j_1]; sizes obey |B| = |B1| + |B2| - |C|.
    A pinned b1 element is reindexed out of the i_1 slot of its cut edge so
    that it appears in exactly one output (returned as ``zstar``); this
    requires the unpinned part of b1 to avoid no edge of its graph.
    """
    if not is_separating(g, cut.shore):
        raise PreconditionViolated("not_separating", "merge needs a separating cut")
    keep_shore, keep_comp = cut_contractions(g, cut.shore_set)
    if {b1.graph, b2.graph} != {keep_shore, keep_comp}:
        raise PreconditionViolated("bad_basis", "bases do not match the two cut-contractions")
    _validate_side_basis(b1)
    _validate_side_basis(b2)

    cut_edges = tuple(sorted(cut.boundary))
    used1 = [_only_cut_edge(m, cut.boundary) for m in b1.elements]
    used2 = [_only_cut_edge(m, cut.boundary) for m in b2.elements]
    i_sets = {e: [i for i, ue in enumerate(used1) if ue == e] for e in cut_edges}
    j_sets = {e: [j for j, ue in enumerate(used2) if ue == e] for e in cut_edges}
    for e in cut_edges:
        if not i_sets[e] or not j_sets[e]:
            raise PreconditionViolated("bad_basis", f"no basis element uses cut edge {e}")

    pin_idx: int | None = None
    if pin is not None:
        pin_idx = pin if isinstance(pin, int) else b1.elements.index(pin)
        covered: set[int] = set()
        for i, m in enumerate(b1.elements):
            if i != pin_idx:
                covered |= m.edge_ids
        if covered != set(b1.graph.edge_ids):
            raise PreconditionViolated(
                "bad_pin", "b1 minus the pin must avoid no edge of its contraction")
        pe = used1[pin_idx]
        others = [i for i in i_sets[pe] if i != pin_idx]
        if not others:
            raise PreconditionViolated("bad_pin", "pin's cut edge is used by no other element")
        head = others[0]  # least non-pin index; i_sets[pe] is ascending
        i_sets[pe] = [head] + [i for i in i_sets[pe] if i != head]

    elements: list[PerfectMatching] = []
    zstar: int | None = None
    for e in cut_edges:
        i_order, j_order = i_sets[e], j_sets[e]
        head = b1.elements[i_order[0]]
        for j in j_order:
            elements.append(PerfectMatching(head.edge_ids | b2.elements[j].edge_ids))
        for t in range(1, len(i_order)):
            z = PerfectMatching(b1.elements[i_order[t]].edge_ids | b2.elements[j_order[0]].edge_ids)
            if pin_idx is not None and i_order[t] == pin_idx:
                zstar = len(elements)
            elements.append(z)

    expected = len(b1.elements) + len(b2.elements) - len(cut.boundary)
    if len(elements) != expected:
        raise TheoremFalsified("merged basis size |B1|+|B2|-|C|", {
            "size": len(elements), "expected": expected})
    for z in elements:
        if not _is_perfect_matching_of(g, z.edge_ids) or len(z.edge_ids & cut.boundary) != 1:
            raise TheoremFalsified("merged elements lie in the cut's face", {
                "element": sorted(z.edge_ids)})
    vecs = incidence_vectors(g, elements)
    if rank(vecs) != len(elements):
        raise TheoremFalsified("merged basis is linearly independent", {
            "size": len(elements), "rank": rank(vecs)})
    if pin_idx is not None:
        pin_m = b1.elements[pin_idx]
        hits = [i for i, z in enumerate(elements) if pin_m.edge_ids <= z.edge_ids]
        if hits != [zstar]:
            raise TheoremFalsified("pinned element occurs in exactly one output", {
                "hits": hits, "zstar": zstar})
        covered_out: set[int] = set()
        for i, z in enumerate(elements):
            if i != zstar:
                covered_out |= z.edge_ids
        if covered_out != set(g.edge_ids):
            raise TheoremFalsified("outputs minus the pinned one avoid no edge", {
                "missing": sorted(set(g.edge_ids) - covered_out)})

    kind = b1.kind if b1.kind == b2.kind else "linear"
    ctx = MergeContext(g, cut, b1, b2, cut_edges,
                       tuple(tuple(i_sets[e]) for e in cut_edges),
                       tuple(tuple(j_sets[e]) for e in cut_edges))
    return MergeResult(Basis(g, tuple(elements), kind), zstar, ctx)


def merge_coefficients(ctx: MergeContext,
                       alpha: Sequence[int | Fraction],
                       beta: Sequence[int | Fraction]) -> list[Fraction]:
    """Transfer coefficients over (b1, b2) to the merged basis.

    The represented vectors must agree on every cut edge.  Per cut edge e,
    the head slot takes alpha(i_1) minus the tail betas, the j-tail slots
    copy beta, and the i-tail slots copy alpha; the reconstruction identity
    is verified exactly before returning, and integer inputs produce
    integer outputs.
    """
    if len(alpha) != len(ctx.b1.elements) or len(beta) != len(ctx.b2.elements):
        raise PreconditionViolated("bad_coefficients", "coefficient lengths do not match the bases")
    a = [Fraction(x) for x in alpha]
    b = [Fraction(x) for x in beta]
    for e, i_order, j_order in zip(ctx.cut_edges, ctx.i_orders, ctx.j_orders):
        if sum(a[i] for i in i_order) != sum(b[j] for j in j_order):
            raise PreconditionViolated(
                "cut_disagreement", f"combined vectors disagree on cut edge {e}")
    lambdas: list[Fraction] = []
    for i_order, j_order in zip(ctx.i_orders, ctx.j_orders):
        ell = len(j_order)
        lambdas.append(a[i_order[0]] - sum(b[j_order[t]] for t in range(1, ell)))
        for t in range(1, ell):
            lambdas.append(b[j_order[t]])
        for t in range(1, len(i_order)):
            lambdas.append(a[i_order[t]])

    # exact reconstruction check: sum(lambda * z) == x (.) y
    merged = _merged_elements_of(ctx)
    target: dict[int, Fraction] = {eid: Fraction(0) for eid in ctx.graph.edge_ids}
    for coef, m in zip(a, ctx.b1.elements):
        for eid in m.edge_ids:
            target[eid] += coef
    for coef, m in zip(b, ctx.b2.elements):
        for eid in m.edge_ids:
            if eid not in ctx.cut.boundary:
                target[eid] += coef
    got: dict[int, Fraction] = {eid: Fraction(0) for eid in ctx.graph.edge_ids}
    for coef, m in zip(lambdas, merged):
        for eid in m.edge_ids:
            got[eid] += coef
    if got != target:
        raise TheoremFalsified("coefficient transfer reconstructs the composition", {
            "diff": {str(k): str(got[k] - target[k]) for k in got if got[k] != target[k]}})
    return lambdas


def _merged_elements_of(ctx: MergeContext) -> list[PerfectMatching]:
    out = []
    for i_order, j_order in zip(ctx.i_orders, ctx.j_orders):
        head = ctx.b1.elements[i_order[0]]
        for j in j_order:
            out.append(PerfectMatching(head.edge_ids | ctx.b2.elements[j].edge_ids))
        for t in range(1, len(i_order)):
            out.append(PerfectMatching(
                ctx.b1.elements[i_order[t]].edge_ids | ctx.b2.elements[j_order[0]].edge_ids))
    return out


# --- near-bricks with a Petersen brick -------------------------------------


def _petersen_family(h: MultiGraph, cycle_vertices: Iterable[int]) -> list[PerfectMatching]:
    """The matching family of a Petersen brick relative to a 5-cycle Y.

    Index 0 crosses delta(Y) five times, all others once; every edge of h
    appears in some member of index >= 1.  Parallel edges are absorbed by
    swapping them into the first original member containing their
    representative.
    """
    if not is_petersen(h):
        raise PreconditionViolated("petersen_brick", "graph is not a Petersen brick")
    d_full = boundary(h, cycle_vertices)
    simple, classes = simplify(h)
    base = enumerate_perfect_matchings(simple)
    if len(base) != 6:
        raise TheoremFalsified("the Petersen graph has six perfect matchings", {
            "count": len(base)})
    fives = [m for m in base if len(m.edge_ids & d_full) == 5]
    ones = [m for m in base if len(m.edge_ids & d_full) == 1]
    if len(fives) != 1 or len(ones) != 5:
        raise PreconditionViolated("bad_cycle_cut",
                                   "cut is not the boundary of a 5-cycle vertex set")
    family = [fives[0]] + ones
    rep_of = {member: rep for rep, members in classes.items() for member in members}
    for f in sorted(set(h.edge_ids) - {e[0] for e in simple.edges}):
        rep = rep_of[f]
        donor = next(j for j in range(1, 6) if rep in family[j])
        family.append(PerfectMatching(family[donor].edge_ids - {rep} | {f}))
    if rank(incidence_vectors(h, family)) != len(family):
        raise TheoremFalsified("Petersen family is linearly independent", {
            "size": len(family)})
    covered: set[int] = set()
    for m in family[1:]:
        covered |= m.edge_ids
    if covered != set(h.edge_ids):
        raise TheoremFalsified("non-head family members cover every edge", {
            "missing": sorted(set(h.edge_ids) - covered)})
    return family


def _petersen_leaf_in(tree) -> bool:
    return any(leaf.leaf_label == "petersen_brick" for leaf in tree.leaves())


def near_brick_petersen_basis(g: MultiGraph, d5: Cut | Iterable[int]) -> tuple[PerfectMatching, ...]:
    """Basis (M_0, M_1, ..., M_d) of lin(P(G)) for a near-brick whose brick
    is a Petersen brick: M_0 meets the lifted 5-cycle cut five times, every
    other member once, and M_1..M_d together cover every edge.

    Built by climbing the decomposition tree from the Petersen leaf,
    merging with a pin on the five-crossing element at every tight cut.
    """
    from .decomposition import tight_cut_decomposition

    require_matching_covered(g)
    d_edges = frozenset(d5.boundary) if isinstance(d5, Cut) else frozenset(d5)
    tree = tight_cut_decomposition(g)
    pbricks = [leaf for leaf in tree.leaves() if leaf.leaf_label == "petersen_brick"]
    bricks = [leaf for leaf in tree.leaves() if leaf.leaf_label in ("brick", "petersen_brick")]
    if len(bricks) != 1 or len(pbricks) != 1:
        raise PreconditionViolated("not_petersen_near_brick",
                                   "need exactly one brick and it must be a Petersen brick")
    leaf_graph = pbricks[0].graph
    cycle = next((verts for verts, _ in five_cycles(leaf_graph)
                  if boundary(leaf_graph, verts) == d_edges), None)
    if cycle is None:
        raise PreconditionViolated("bad_cycle_cut",
                                   "cut is not a lifted 5-cycle boundary of the Petersen brick")

    def build(node) -> tuple[tuple[PerfectMatching, ...], int]:
        if node.is_leaf:
            fam = _petersen_family(node.graph, cycle)
            return tuple(fam), 0
        left, right = node.children
        if _petersen_leaf_in(left):
            pet_child, other_child = left, right
        else:
            pet_child, other_child = right, left
        pet_elems, pin = build(pet_child)
        res = merge_bases(node.graph, node.cut,
                          Basis(pet_child.graph, pet_elems, "linear"),
                          pm_linear_basis(other_child.graph), pin=pin)
        assert res.zstar is not None
        return res.basis.elements, res.zstar

    elems, pin = build(tree)
    ordered = (elems[pin],) + tuple(m for i, m in enumerate(elems) if i != pin)
    head_cross = len(ordered[0].edge_ids & d_edges)
    tail_cross = sorted({len(m.edge_ids & d_edges) for m in ordered[1:]})
    covered: set[int] = set()
    for m in ordered[1:]:
        covered |= m.edge_ids
    if head_cross != 5 or tail_cross != [1] or covered != set(g.edge_ids):
        raise TheoremFalsified("near-brick Petersen basis intersection pattern", {
            "head": head_cross, "tail": tail_cross,
            "missing": sorted(set(g.edge_ids) - covered)})
    return ordered


# --- the 3-intersection search ---------------------------------------------


@dataclass(frozen=True)
class IntersectionPair:
    matching: PerfectMatching
    cut: Cut


def _intersection_preconditions(g: MultiGraph) -> None:
    require_matching_covered(g)
    if brick_count(g) != 1:
        raise PreconditionViolated("not_near_brick")
    if petersen_bricks(g):
        raise PreconditionViolated("petersen_brick")
    if is_bvn(g)[0]:
        raise PreconditionViolated("bvn")


def find_intersection_pair(g: MultiGraph,
                           max_vertices: int = DEFAULT_VERTEX_CAP) -> IntersectionPair:
    """First (canonical cut order, then matching order) pair of a perfect
    matching and a separating facet-defining cut meeting three times.

    Precondition errors fire on non-near-bricks, Petersen near-bricks and
    BvN graphs; exhaustion without a hit raises a falsification certificate
    since such a pair is guaranteed to exist.
    """
    _intersection_preconditions(g)
    ms = enumerate_perfect_matchings(g)
    cuts = separating_facet_defining_cuts(g, max_vertices)
    for cut in cuts:
        for m in ms:
            if len(m.edge_ids & cut.boundary) == 3:
                return IntersectionPair(m, cut)
    raise TheoremFalsified("a 3-intersecting (matching, cut) pair exists", {
        "vertex_count": g.vertex_count,
        "edges": [[eid, u, v] for eid, u, v in sorted(g.edges)],
        "cut_table": [{"shore": list(c.shore),
                       "crossings": [len(m.edge_ids & c.boundary) for m in ms]}
                      for c in cuts]})


# --- integral bases ----------------------------------------------------------


def _span_lattice(g: MultiGraph, elements: Sequence[PerfectMatching]) -> Lattice:
    return hnf(incidence_vectors(g, elements), len(g.edges))


@lru_cache(maxsize=None)
def matching_saturation(g: MultiGraph) -> Lattice:
    """Lattice of all integer points in lin(P(G)): the saturation of the
    span of the matching incidence vectors."""
    return saturation(incidence_vectors(g, enumerate_perfect_matchings(g)), len(g.edges))


@lru_cache(maxsize=None)
def matching_lattice(g: MultiGraph) -> Lattice:
    """The matching lattice L(G): integer span of all matching vectors."""
    return hnf(incidence_vectors(g, enumerate_perfect_matchings(g)), len(g.edges))


def _check_integral(g: MultiGraph, elements: Sequence[PerfectMatching], stage: str) -> None:
    got = _span_lattice(g, elements)
    want = matching_saturation(g)
    if not lattice_equal(got, want):
        raise TheoremFalsified("integer span equals the saturation of the matching span", {
            "stage": stage,
            "span": [list(r) for r in got.basis],
            "saturation": [list(r) for r in want.basis]})


def _bvn_integral_elements(g: MultiGraph) -> tuple[PerfectMatching, ...]:
    """Integral basis extraction for the Birkhoff-von-Neumann base case.

    Greedy rank selection in enumeration order usually lands on an
    integral basis; when it does not, fall back to the exhaustive
    lexicographic subset search whose success is externally guaranteed.
    """
    ms = enumerate_perfect_matchings(g)
    want = matching_saturation(g)
    greedy = pm_linear_basis(g).elements
    if lattice_equal(_span_lattice(g, greedy), want):
        return greedy
    need = dim_by_rank(g) + 1
    for combo in itertools.combinations(range(len(ms)), need):
        cand = [ms[i] for i in combo]
        vecs = incidence_vectors(g, cand)
        if rank(vecs) == need and lattice_equal(hnf(vecs, len(g.edges)), want):
            return tuple(cand)
    raise TheoremFalsified("a BvN matching polytope admits an integral matching basis", {
        "vertex_count": g.vertex_count, "matchings": len(ms)})


class _GuidedStall(Exception):
    pass


def _sides_petersen_free(g: MultiGraph, cut: Cut) -> bool:
    ks, kc = cut_contractions(g, cut.shore_set)
    return not petersen_bricks(ks) and not petersen_bricks(kc)


def _adjust_cut(g: MultiGraph, cut: Cut, m: PerfectMatching,
                max_vertices: int) -> tuple[Cut, PerfectMatching]:
    """Trade a 3-intersected cut with a Petersen-brick side for one with
    Petersen-free sides, still 3-intersected by some matching.

    Guided path: shrink the cut through equivalent tight-cut shores until
    the kept side is itself a Petersen brick, then switch to the boundary
    of one of its 5-cycles and re-search for a 3-crossing matching.  Any
    verification failure on the way falls back to the exhaustive scan over
    all separating facet-defining cuts with Petersen-free sides.
    """
    ms = enumerate_perfect_matchings(g)

    def guided() -> tuple[Cut, PerfectMatching]:
        side = None
        for cand in (cut.shore_set, shore_complement(g, cut.shore_set)):
            if petersen_bricks(contract_shore(g, cand)):
                side = cand
                break
        if side is None:
            raise _GuidedStall
        current = cut
        x = frozenset(side)
        for _ in range(g.vertex_count):
            kept = contract_shore(g, x)
            if find_tight_cut(kept) is None:
                if not is_petersen(kept):
                    raise _GuidedStall
                break
            c_vertex = len(x)
            back = {new: old for old, new in shore_index_map(x).items()}
            tight_zs = []
            for shore_h in odd_shores(kept):
                edges = boundary(kept, shore_h)
                if all(len(mm.edge_ids & edges) == 1
                       for mm in enumerate_perfect_matchings(kept)):
                    # representative side avoiding the contraction vertex
                    if c_vertex in shore_h:
                        z_h = tuple(sorted(set(range(kept.vertex_count)) - set(shore_h)))
                    else:
                        z_h = tuple(sorted(shore_h))
                    tight_zs.append(z_h)
            if not tight_zs:
                raise _GuidedStall
            z_h = min(tight_zs, key=lambda t: (len(t), t))
            z = frozenset(back[v] for v in z_h)
            new_cut = make_cut(g, z)
            same_face = face_members(g, current.boundary) == face_members(g, new_cut.boundary)
            if not (same_face and cuts_equivalent(g, current, new_cut)
                    and is_separating(g, new_cut.shore)
                    and len(m.edge_ids & new_cut.boundary) == 3):
                raise _GuidedStall
            current, x = new_cut, z
        kept = contract_shore(g, x)
        if find_tight_cut(kept) is not None or not is_petersen(kept):
            raise _GuidedStall
        d = dim_by_rank(g)
        c_vertex = len(x)
        back = {new: old for old, new in shore_index_map(x).items()}
        for verts, _ in five_cycles(kept):
            if c_vertex in verts:
                continue
            y = frozenset(back[v] for v in verts)
            d_cut = make_cut(g, y)
            mem = face_members(g, d_cut.boundary)
            if not mem or members_dim(g, mem) != d - 1:
                continue
            if not is_separating(g, d_cut.shore) or not _sides_petersen_free(g, d_cut):
                continue
            for m2 in ms:
                if len(m2.edge_ids & d_cut.boundary) == 3:
                    return d_cut, m2
        raise _GuidedStall

    try:
        return guided()
    except _GuidedStall:
        for c2 in separating_facet_defining_cuts(g, max_vertices):
            if not _sides_petersen_free(g, c2):
                continue
            for m2 in ms:
                if len(m2.edge_ids & c2.boundary) == 3:
                    return c2, m2
        raise TheoremFalsified(
            "a separating facet-defining cut with Petersen-free sides and a "
            "3-crossing matching exists", {
                "vertex_count": g.vertex_count,
                "edges": [[eid, u, v] for eid, u, v in sorted(g.edges)]})


def _integral_elements(g: MultiGraph, max_vertices: int) -> tuple[PerfectMatching, ...]:
    if is_bvn(g, max_vertices)[0]:
        out = _bvn_integral_elements(g)
        _check_integral(g, out, "bvn_base")
        return out
    cut = find_tight_cut(g)
    if cut is not None:
        ks, kc = cut_contractions(g, cut.shore_set)
        res = merge_bases(g, cut,
                          Basis(ks, _integral_elements(ks, max_vertices), "integral"),
                          Basis(kc, _integral_elements(kc, max_vertices), "integral"))
        _check_integral(g, res.basis.elements, "tight_cut_merge")
        return res.basis.elements
    pair = find_intersection_pair(g, max_vertices)
    cut, m = pair.cut, pair.matching
    if not _sides_petersen_free(g, cut):
        cut, m = _adjust_cut(g, cut, m, max_vertices)
    ks, kc = cut_contractions(g, cut.shore_set)
    res = merge_bases(g, cut,
                      Basis(ks, _integral_elements(ks, max_vertices), "integral"),
                      Basis(kc, _integral_elements(kc, max_vertices), "integral"))
    out = res.basis.elements + (m,)
    _check_integral(g, out, "brick_step")
    return out


def integral_basis(g: MultiGraph, max_vertices: int = DEFAULT_VERTEX_CAP) -> Basis:
    """Integral basis of lin(P(G)) made of perfect matchings (Petersen-free
    graphs only); the integer span is verified against the saturation of
    the span of all matchings before returning."""
    require_matching_covered(g)
    if petersen_bricks(g):
        raise PreconditionViolated("petersen_brick")
    return Basis(g, _integral_elements(g, max_vertices), "integral")


# --- lattice bases and the mod-2 characterization ---------------------------


def _lattice_elements(g: MultiGraph, max_vertices: int) \
        -> tuple[tuple[PerfectMatching, ...], list[frozenset[int]]]:
    cut = find_tight_cut(g)
    if cut is not None:
        ks, kc = cut_contractions(g, cut.shore_set)
        e1, p1 = _lattice_elements(ks, max_vertices)
        e2, p2 = _lattice_elements(kc, max_vertices)
        res = merge_bases(g, cut, Basis(ks, e1, "lattice"), Basis(kc, e2, "lattice"))
        out = res.basis.elements
        psets = p1 + p2
    elif is_petersen(g):
        verts, eids = canonical_parity_cycle(g)
        out = tuple(_petersen_family(g, verts))
        psets = [frozenset(eids)]
    else:
        out = _integral_elements(g, max_vertices)
        psets = []
    got = _span_lattice(g, out)
    want = matching_lattice(g)
    if not lattice_equal(got, want):
        raise TheoremFalsified("integer span of the basis equals the matching lattice", {
            "span": [list(r) for r in got.basis],
            "lattice": [list(r) for r in want.basis]})
    return out, psets


def lattice_basis(g: MultiGraph, max_vertices: int = DEFAULT_VERTEX_CAP) \
        -> tuple[Basis, tuple[frozenset[int], ...]]:
    """Lattice basis of L(G) made of perfect matchings, plus one canonical
    5-cycle edge set per Petersen brick in the decomposition."""
    require_matching_covered(g)
    elements, psets = _lattice_elements(g, max_vertices)
    return Basis(g, elements, "lattice"), tuple(psets)


@dataclass(frozen=True)
class LatticeCharacterization:
    """Outcome of comparing L(G) with the parity-constrained saturation."""

    matching_count: int
    rank: int
    index: int
    parity_sets: tuple[tuple[int, ...], ...]
    equality_holds: bool
    two_x_in_lattice: bool | None
    lattice: Lattice
    saturation: Lattice

    def to_payload(self) -> dict:
        return {
            "matchings": self.matching_count,
            "rank": self.rank,
            "saturation_index": self.index,
            "parity_sets": [list(a) for a in self.parity_sets],
            "equality_holds": self.equality_holds,
            "two_x_in_lattice": self.two_x_in_lattice,
        }


def characterize_lattice(g: MultiGraph) -> LatticeCharacterization:
    """Check L = (saturation) ∩ {x(A_i) even for every Petersen parity set}.

    Also reports the index of L inside the saturation and, when parity
    sets exist, whether doubling any saturation basis vector lands in L.
    Equality or 2x-membership failures raise a falsification certificate.
    """
    require_matching_covered(g)
    ms = enumerate_perfect_matchings(g)
    lat = matching_lattice(g)
    sat = matching_saturation(g)
    psets = parity_sets(g)
    edge_pos = {eid: i for i, eid in enumerate(g.edge_ids)}

    if psets:
        trows = [[sum(row[edge_pos[eid]] for eid in a) % 2 for row in sat.basis]
                 for a in psets]
        kernel = gf2_kernel(trows, sat.rank)
        gens = [list(k) for k in kernel]
        gens += [[2 * int(i == j) for j in range(sat.rank)] for i in range(sat.rank)]
        rows = []
        for c in gens:
            rows.append([sum(ci * bi for ci, bi in zip(c, col))
                         for col in zip(*sat.basis)])
        constrained = hnf(rows, len(g.edges))
    else:
        constrained = sat

    equality = lattice_equal(lat, constrained)
    index = lattice_index(lat, sat)
    two_x: bool | None = None
    if psets:
        two_x = all(lattice_member(lat, [2 * x for x in row]) is not None
                    for row in sat.basis)
    report = LatticeCharacterization(
        len(ms), lat.rank, int(index),
        tuple(tuple(sorted(a)) for a in psets),
        equality, two_x, lat, sat)
    if not equality or two_x is False:
        raise TheoremFalsified("matching lattice equals the parity-constrained saturation", {
            "payload": report.to_payload(),
            "lattice": [list(r) for r in lat.basis],
            "constrained": [list(r) for r in constrained.basis]})
    return report
