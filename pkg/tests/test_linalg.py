import random
from fractions import Fraction

import pytest

from pmlattice.corpus import corpus_graph
from pmlattice.linalg import (Lattice, affine_dim, gf2_kernel, hnf,
                              integer_kernel, lattice_equal, lattice_index,
                              lattice_member, rank, saturation, snf, solve,
                              xgcd)
from pmlattice.matchings import enumerate_perfect_matchings, incidence_vectors

from conftest import oracle_rank


def _petersen_vectors():
    g = corpus_graph("petersen")
    return incidence_vectors(g, enumerate_perfect_matchings(g))


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0, 0], [0, 0]]) == 0
    vecs = _petersen_vectors()
    assert len(vecs) == 6
    assert rank(vecs) == 6 == oracle_rank(vecs)


def test_solve_and_substitute():
    rng = random.Random(3)
    for _ in range(25):
        rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
        x = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)]
        b = [sum(r * v for r, v in zip(row, x)) for row in rows]
        sol = solve(rows, b)
        assert sol is not None
        assert all(sum(r * v for r, v in zip(row, sol)) == bv
                   for row, bv in zip(rows, b))
    assert solve([[1, 0], [1, 0]], [0, 1]) is None
    with pytest.raises(ValueError):
        solve([[1, 0]], [1, 2])


def test_xgcd():
    for a, b in ((12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (-9, -6)):
        g, s, t = xgcd(a, b)
        assert g == s * a + t * b and g >= 0


def test_hnf_examples():
    lat = hnf([[2, 0], [0, 2]])
    assert lat.basis == ((2, 0), (0, 2))
    assert hnf([[0, 0, 0]]).basis == ()
    # canonical: above-pivot entries reduced into [0, pivot)
    lat = hnf([[1, 7], [0, 3]])
    assert lat.basis == ((1, 1), (0, 3))


def test_hnf_canonical_under_unimodular_mixes():
    rng = random.Random(5)
    for _ in range(30):
        rows = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(3)]
        mixed = [list(r) for r in rows]
        for _ in range(6):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-2, 2)
            mixed[i] = [a + c * b for a, b in zip(mixed[i], mixed[j])]
        rng.shuffle(mixed)
        assert hnf(rows).basis == hnf(mixed).basis


def test_hnf_idempotent():
    rng = random.Random(13)
    for _ in range(20):
        rows = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(3)]
        lat = hnf(rows, 4)
        assert hnf([list(r) for r in lat.basis], 4).basis == lat.basis


def test_snf_examples():
    assert snf([[1, 1], [1, -1]]) == (1, 2)
    assert snf([[2, 0], [0, 2]]) == (2, 2)
    assert snf([[0, 0]]) == ()
    assert snf([[6]]) == (6,)
    # divisibility chain holds
    divs = snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert all(divs[i + 1] % divs[i] == 0 for i in range(len(divs) - 1))


def test_integer_kernel():
    ker = integer_kernel([[1, 1, 1]], 3)
    assert ker.rank == 2
    assert all(sum(row) == 0 for row in ker.basis)
    assert integer_kernel([], 2).basis == ((1, 0), (0, 1))


def test_saturation_examples():
    assert saturation([[2, 2]]).basis == ((1, 1),)
    assert saturation([[1, 0], [0, 1]]).basis == ((1, 0), (0, 1))
    assert saturation([[0, 0]]).basis == ()
    vecs = _petersen_vectors()
    sat = saturation(vecs)
    lat = hnf(vecs)
    assert sat.rank == 6
    assert lattice_index(lat, sat) == 2


def test_saturation_contains_row_lattice_and_is_idempotent():
    rng = random.Random(9)
    for _ in range(20):
        rows = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)]
        sat = saturation(rows, 4)
        for row in hnf(rows, 4).basis:
            assert lattice_member(sat, row) is not None
        again = saturation([list(r) for r in sat.basis], 4)
        assert lattice_equal(sat, again)


def test_lattice_member_certificates_recombine():
    lat = hnf([[1, 0, 2], [0, 3, 1]])
    rng = random.Random(2)
    for _ in range(20):
        coeffs = [rng.randint(-5, 5) for _ in lat.basis]
        z = [sum(c * row[j] for c, row in zip(coeffs, lat.basis))
             for j in range(lat.ambient_dim)]
        got = lattice_member(lat, z)
        assert got is not None
        rebuilt = [sum(c * row[j] for c, row in zip(got, lat.basis))
                   for j in range(lat.ambient_dim)]
        assert rebuilt == z
    assert lattice_member(lat, [0, 1, 0]) is None
    assert lattice_member(hnf([[1, 0], [0, 1]]), [3, -2]) == (3, -2)


def test_lattice_index_examples():
    z2 = hnf([[1, 0], [0, 1]])
    sub = hnf([[2, 0], [0, 1]])
    assert lattice_index(sub, z2) == 2
    assert lattice_index(hnf([[2, 0]], 2), z2) == float("inf")
    with pytest.raises(ValueError):
        lattice_index(z2, sub)  # Z^2 is not inside the sublattice


def test_lattice_validation():
    with pytest.raises(ValueError):
        Lattice(2, ((1, 0, 0),))
    with pytest.raises(ValueError):
        lattice_equal(hnf([[1]]), hnf([[1, 0]]))


def test_affine_dim():
    assert affine_dim([]) == -1
    assert affine_dim([(1, 2)]) == 0
    assert affine_dim([(0, 0), (1, 0), (0, 1), (1, 1)]) == 2


def test_gf2_kernel():
    # kernel of [1 1 0; 0 1 1] over GF(2) is spanned by (1,1,1)
    ker = gf2_kernel([[1, 1, 0], [0, 1, 1]], 3)
    assert ker == [(1, 1, 1)]
    assert gf2_kernel([], 2) == [(1, 0), (0, 1)]
    for row in gf2_kernel([[1, 0, 1, 1], [1, 1, 1, 0]], 4):
        assert sum(row[j] for j in (0, 2, 3)) % 2 == 0
        assert sum(row[j] for j in (0, 1, 2)) % 2 == 0
