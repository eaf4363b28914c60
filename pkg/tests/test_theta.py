import pytest

from siegellift.quadform import (HalfIntegralMatrix, quaternary_catalog,
                                 random_unimodular)
from siegellift.theta import (d16plus, e8e8, schottky_coefficient,
                              short_vectors, theta_coefficient)


def test_lattice_construction():
    for L in (e8e8(), d16plus()):
        assert L.dim == 16 and L.is_unimodular()
        assert all(L.gram[i][i] % 2 == 0 for i in range(16))


def test_short_vector_counts():
    for L in (e8e8(), d16plus()):
        sv = short_vectors(L, 4)
        assert {nm: len(v) for nm, v in sv.items()} == {0: 1, 2: 480, 4: 61920}


def test_degree_one_and_two_coincidence():
    A, B = e8e8(), d16plus()
    for T in (HalfIntegralMatrix([[2]]), HalfIntegralMatrix([[4]]),
              HalfIntegralMatrix([[2, 1], [1, 2]]),
              HalfIntegralMatrix([[2, 0], [0, 2]]),
              HalfIntegralMatrix([[2, 0], [0, 4]])):
        assert theta_coefficient(A, T) == theta_coefficient(B, T)


def test_e8e8_degree_two_summand_convolution():
    # coefficient of the direct sum = convolution over splittings with
    # both parts lying in one E8 summand or split across the two
    from siegellift.theta import EvenLattice, _chain_gram, _d_plus_basis
    E8 = EvenLattice("e8", _chain_gram(_d_plus_basis(8)))
    A = e8e8()
    T = HalfIntegralMatrix([[2, 1], [1, 2]])
    # (v, w) with v = (v1, v2), w = (w1, w2): <v,w> = 1 forces the parts
    # to realize (a, 1-a) as summand pairings; enumerate the small grid
    total = 0
    for a in (-2, -1, 0, 1, 2, 3):
        for n1 in (0, 2):
            for m1 in (0, 2):
                T1 = HalfIntegralMatrix([[n1, a], [a, m1]])
                T2 = HalfIntegralMatrix([[2 - n1, 1 - a], [1 - a, 2 - m1]])
                total += theta_coefficient(E8, T1) * theta_coefficient(E8, T2)
    assert total == theta_coefficient(A, T)


def test_degree_three_null_exhaustive_diag2():
    count = 0
    for a in range(-2, 3):
        for b in range(-2, 3):
            for c in range(-2, 3):
                T = HalfIntegralMatrix([[2, a, b], [a, 2, c], [b, c, 2]])
                assert schottky_coefficient(T) == 0
                count += 1
    assert count == 125


def test_degree_three_null_with_norm_four():
    for row in ([[2, 1, 0], [1, 2, 2], [0, 2, 4]],
                [[2, 0, 1], [0, 4, 0], [1, 0, 4]]):
        assert schottky_coefficient(HalfIntegralMatrix(row)) == 0


def test_schottky_first_nonzero_values():
    cat = {T.det_even(): T for T in quaternary_catalog()}
    assert schottky_coefficient(cat[4]) == 5160960
    assert schottky_coefficient(cat[5]) == -5160960


def test_schottky_base_change_invariance():
    T = quaternary_catalog()[0]
    base = schottky_coefficient(T)
    seed = 3
    while True:
        U = random_unimodular(4, seed, steps=4)
        S = T.transform(U)
        if all(S.even[i][i] <= 4 for i in range(4)) and S.even != T.even:
            break
        seed += 1
    assert schottky_coefficient(S) == base
