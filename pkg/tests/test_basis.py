import random
from fractions import Fraction

import pytest

from pmlattice.basis import (Basis, characterize_lattice,
                             find_intersection_pair, integral_basis,
                             lattice_basis, matching_lattice,
                             matching_saturation, merge_bases,
                             merge_coefficients, near_brick_petersen_basis,
                             pm_linear_basis)
from pmlattice.decomposition import canonical_parity_cycle, petersen_bricks
from pmlattice.errors import PreconditionViolated
from pmlattice.graph import boundary, cut_contractions, five_cycles, make_cut
from pmlattice.linalg import hnf, lattice_equal, lattice_index, rank
from pmlattice.matchings import enumerate_perfect_matchings, incidence_vectors
from pmlattice.polytope import separating_cuts


def _rng_coefficients(ctx, rng, integral=False):
    """Random (alpha, beta) agreeing on every cut edge."""
    if integral:
        draw = lambda: Fraction(rng.randint(-4, 4))
    else:
        draw = lambda: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    alpha = [draw() for _ in ctx.b1.elements]
    beta = [Fraction(0)] * len(ctx.b2.elements)
    for i_order, j_order in zip(ctx.i_orders, ctx.j_orders):
        total = sum(alpha[i] for i in i_order)
        tail = [draw() for _ in j_order[1:]]
        beta[j_order[0]] = total - sum(tail)
        for j, val in zip(j_order[1:], tail):
            beta[j] = val
    return alpha, beta


def test_merge_size_rank_and_face_on_small_corpus(corpus):
    for name in ("c6", "k33", "cube", "prism", "double-prism", "petersen"):
        g = corpus[name]
        for cut in separating_cuts(g):
            ks, kc = cut_contractions(g, cut.shore_set)
            res = merge_bases(g, cut, pm_linear_basis(ks), pm_linear_basis(kc))
            b = res.basis
            assert len(b.elements) == (len(pm_linear_basis(ks).elements)
                                       + len(pm_linear_basis(kc).elements)
                                       - len(cut.boundary)), name
            assert rank(b.vectors()) == len(b.elements)
            assert all(len(m.edge_ids & cut.boundary) == 1 for m in b.elements)


def test_merge_prism_rung_cut(corpus):
    g = corpus["prism"]
    cut = make_cut(g, (0, 1, 2))
    ks, kc = cut_contractions(g, cut.shore_set)
    res = merge_bases(g, cut, pm_linear_basis(ks), pm_linear_basis(kc))
    assert len(res.basis.elements) == 3  # 3 + 3 - 3


def test_merge_rejects_non_separating(corpus):
    g = corpus["c6"]
    cut = make_cut(g, (0, 2, 4))
    with pytest.raises(PreconditionViolated):
        merge_bases(g, cut, pm_linear_basis(g), pm_linear_basis(g))


def test_merge_pin_occurs_once(corpus):
    g = corpus["pete-c4-splice"]
    cut = make_cut(g, tuple(range(9)))
    ks, kc = cut_contractions(g, cut.shore_set)
    pet_side = ks if len(ks.edges) == 15 else kc
    other = kc if pet_side is ks else ks
    verts, _ = canonical_parity_cycle(pet_side)
    from pmlattice.basis import _petersen_family

    fam = _petersen_family(pet_side, verts)
    res = merge_bases(g, cut, Basis(pet_side, tuple(fam), "linear"),
                      pm_linear_basis(other), pin=0)
    assert res.zstar is not None
    pin_edges = fam[0].edge_ids
    hits = [i for i, z in enumerate(res.basis.elements) if pin_edges <= z.edge_ids]
    assert hits == [res.zstar]


def test_coefficient_transfer_unit_case(corpus):
    g = corpus["prism"]
    cut = make_cut(g, (0, 1, 2))
    ks, kc = cut_contractions(g, cut.shore_set)
    res = merge_bases(g, cut, pm_linear_basis(ks), pm_linear_basis(kc))
    ctx = res.context
    # x = single element of b1, y = a partner through the same cut edge
    e_idx = 0
    i0 = ctx.i_orders[e_idx][0]
    j0 = ctx.j_orders[e_idx][0]
    alpha = [Fraction(int(i == i0)) for i in range(len(ctx.b1.elements))]
    beta = [Fraction(int(j == j0)) for j in range(len(ctx.b2.elements))]
    lam = merge_coefficients(ctx, alpha, beta)
    assert sorted(lam) == [0] * (len(lam) - 1) + [1]


def test_coefficient_transfer_integrality_and_reconstruction(corpus):
    rng = random.Random(42)
    for name in ("prism", "c6", "petersen"):
        g = corpus[name]
        for cut in separating_cuts(g)[:2]:
            ks, kc = cut_contractions(g, cut.shore_set)
            res = merge_bases(g, cut, pm_linear_basis(ks), pm_linear_basis(kc))
            ctx = res.context
            for _ in range(10):
                alpha, beta = _rng_coefficients(ctx, rng, integral=True)
                lam = merge_coefficients(ctx, alpha, beta)
                assert all(l.denominator == 1 for l in lam)
            for _ in range(10):
                alpha, beta = _rng_coefficients(ctx, rng)
                lam = merge_coefficients(ctx, alpha, beta)
                # independent reconstruction of both sides
                target: dict[int, Fraction] = {e: Fraction(0) for e in g.edge_ids}
                for c, m in zip(alpha, ctx.b1.elements):
                    for e in m.edge_ids:
                        target[e] += c
                for c, m in zip(beta, ctx.b2.elements):
                    for e in m.edge_ids:
                        if e not in cut.boundary:
                            target[e] += c
                got = {e: Fraction(0) for e in g.edge_ids}
                for c, m in zip(lam, res.basis.elements):
                    for e in m.edge_ids:
                        got[e] += c
                assert got == target


def test_coefficient_transfer_rejects_disagreement(corpus):
    g = corpus["prism"]
    cut = make_cut(g, (0, 1, 2))
    ks, kc = cut_contractions(g, cut.shore_set)
    ctx = merge_bases(g, cut, pm_linear_basis(ks), pm_linear_basis(kc)).context
    alpha = [Fraction(1)] * len(ctx.b1.elements)
    beta = [Fraction(0)] * len(ctx.b2.elements)
    with pytest.raises(PreconditionViolated):
        merge_coefficients(ctx, alpha, beta)


def test_near_brick_petersen_basis_patterns(corpus):
    for name, expected_size in (("petersen", 6), ("petersen-parallel", 7),
                                ("pete-c4-splice", 6)):
        g = corpus[name]
        (leaf, _), = petersen_bricks(g)
        verts, _ = canonical_parity_cycle(leaf.graph)
        d5 = boundary(leaf.graph, verts)
        fam = near_brick_petersen_basis(g, d5)
        assert len(fam) == expected_size
        crossings = [len(m.edge_ids & d5) for m in fam]
        assert crossings[0] == 5 and all(c == 1 for c in crossings[1:])
        covered = set()
        for m in fam[1:]:
            covered |= m.edge_ids
        assert covered == set(g.edge_ids)
        assert rank(incidence_vectors(g, fam)) == expected_size


def test_near_brick_petersen_basis_rejects(corpus):
    g = corpus["pete-k4-splice"]  # two bricks
    (leaf, _), = petersen_bricks(g)
    verts, _ = canonical_parity_cycle(leaf.graph)
    with pytest.raises(PreconditionViolated):
        near_brick_petersen_basis(g, boundary(leaf.graph, verts))
    p = corpus["petersen"]
    with pytest.raises(PreconditionViolated):
        near_brick_petersen_basis(p, frozenset({0, 1, 2, 3, 4}))  # a cycle, not its cut


def test_find_intersection_pair(corpus):
    pair = find_intersection_pair(corpus["prism"])
    assert sorted(pair.matching.edge_ids) == [6, 7, 8]
    assert pair.cut.shore == (0, 1, 2)
    pair = find_intersection_pair(corpus["double-prism"])
    assert len(pair.matching.edge_ids & pair.cut.boundary) == 3
    for name, reason in (("k4", "bvn"), ("petersen", "petersen_brick"),
                         ("c6", "not_near_brick"), ("pete-k4-splice", "not_near_brick")):
        with pytest.raises(PreconditionViolated) as err:
            find_intersection_pair(corpus[name])
        assert err.value.reason == reason, name


def test_integral_basis_examples(corpus):
    ms = enumerate_perfect_matchings(corpus["k4"])
    b = integral_basis(corpus["k4"])
    assert sorted(m.key() for m in b.elements) == [m.key() for m in ms]
    assert len(integral_basis(corpus["c6"]).elements) == 2
    assert len(integral_basis(corpus["prism"]).elements) == 4  # dim + 1 forces all


def test_integral_basis_postcheck_oracle(corpus):
    for name in ("k4", "c6", "k33", "cube", "prism", "double-prism"):
        g = corpus[name]
        b = integral_basis(g)
        got = hnf(b.vectors(), len(g.edges))
        assert lattice_equal(got, matching_saturation(g)), name


def test_integral_basis_rejects_petersen(corpus):
    for name in ("petersen", "petersen-parallel", "pete-c4-splice"):
        with pytest.raises(PreconditionViolated) as err:
            integral_basis(corpus[name])
        assert err.value.reason == "petersen_brick"


def test_lattice_basis(corpus):
    b, psets = lattice_basis(corpus["petersen"])
    assert len(b.elements) == 6 and len(psets) == 1
    assert psets[0] == frozenset({0, 1, 2, 3, 4})
    # Petersen-free: no parity sets and the basis is simultaneously integral
    for name in ("k4", "c6", "prism", "double-prism", "cube"):
        g = corpus[name]
        b, psets = lattice_basis(g)
        assert psets == ()
        assert lattice_equal(hnf(b.vectors(), len(g.edges)), matching_saturation(g))
    b, psets = lattice_basis(corpus["pete-k4-splice"])
    assert len(psets) == 1 and len(b.elements) == 9


def test_lattice_basis_spans_matching_lattice(corpus):
    for name, g in corpus.items():
        b, _ = lattice_basis(g)
        assert lattice_equal(hnf(b.vectors(), len(g.edges)), matching_lattice(g)), name


def test_characterize_lattice(corpus):
    rep = characterize_lattice(corpus["petersen"])
    assert rep.index == 2 and rep.equality_holds and rep.two_x_in_lattice
    assert characterize_lattice(corpus["prism"]).index == 1
    assert characterize_lattice(corpus["c6"]).index == 1
    assert characterize_lattice(corpus["k33"]).two_x_in_lattice is None


def test_petersen_parity_evenness(corpus):
    # every perfect matching meets every 5-cycle edge set in 0 or 2 edges
    g = corpus["petersen"]
    for m in enumerate_perfect_matchings(g):
        for _, eids in five_cycles(g):
            assert len(m.edge_ids & set(eids)) in (0, 2)


def _triangle_expanded_petersen():
    # split vertex 0 of the Petersen graph into a triangle {0, 10, 11}:
    # a Petersen-free non-BvN brick whose triangle cut contracts back onto
    # a Petersen brick, which forces the cut-adjustment path
    from pmlattice.graph import MultiGraph

    pairs = ((0, 1), (1, 2), (2, 3), (3, 4), (10, 4), (11, 5), (1, 6), (2, 7),
             (3, 8), (4, 9), (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
             (0, 10), (0, 11), (10, 11))
    return MultiGraph.from_pairs(12, pairs)


def test_cut_adjustment_on_expanded_petersen(corpus):
    from pmlattice.basis import _adjust_cut, _sides_petersen_free
    from pmlattice.decomposition import brick_count, petersen_bricks

    g = _triangle_expanded_petersen()
    assert brick_count(g) == 1 and not petersen_bricks(g)
    pair = find_intersection_pair(g)
    # the first pair found is the triangle cut, whose far side is a
    # Petersen brick, so the construction must trade the cut away
    assert pair.cut.shore == (0, 10, 11)
    assert not _sides_petersen_free(g, pair.cut)
    new_cut, new_m = _adjust_cut(g, pair.cut, pair.matching, 16)
    assert _sides_petersen_free(g, new_cut)
    assert len(new_m.edge_ids & new_cut.boundary) == 3
    # the full construction runs the same path end to end
    b = integral_basis(g)
    assert lattice_equal(hnf(b.vectors(), len(g.edges)), matching_saturation(g))
    rep = characterize_lattice(g)
    assert rep.index == 1 and rep.equality_holds


def test_saturation_index_is_power_of_two(corpus):
    for name, g in corpus.items():
        idx = lattice_index(matching_lattice(g), matching_saturation(g))
        assert idx in (1, 2), name
        assert (idx == 2) == bool(petersen_bricks(g)), name
