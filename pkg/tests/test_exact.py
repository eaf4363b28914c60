from fractions import Fraction

import pytest

from siegellift.exact import (
    HalfPowerScalar,
    QExpansion,
    SymmetricLaurentPoly,
    bernoulli,
    cohen_H,
    dirichlet_L_neg,
    fundamental_part,
    is_fundamental_discriminant,
    kronecker,
    zeta_neg,
)


def test_bernoulli():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(13) == 0


def test_zeta_neg():
    assert zeta_neg(0) == Fraction(-1, 2)
    assert zeta_neg(1) == Fraction(-1, 12)
    assert zeta_neg(3) == Fraction(1, 120)
    assert zeta_neg(5) == Fraction(-1, 252)
    assert zeta_neg(2) == 0


def test_kronecker():
    # quadratic residues mod 7
    assert [kronecker(a, 7) for a in range(1, 7)] == [1, 1, -1, 1, -1, -1]
    assert kronecker(-4, 5) == 1
    assert kronecker(-4, 7) == -1
    assert kronecker(-4, 2) == 0
    assert kronecker(8, 3) == -1
    assert kronecker(2, 7) == 1
    assert kronecker(-3, 2) == -1  # -3 = 5 mod 8
    assert kronecker(5, 2) == -1
    assert kronecker(17, 2) == 1


def test_fundamental_part():
    assert fundamental_part(-4) == (-4, 1)
    assert fundamental_part(-16) == (-4, 2)
    assert fundamental_part(-48) == (-3, 4)
    assert fundamental_part(-36) == (-4, 3)
    assert fundamental_part(12) == (12, 1)
    assert fundamental_part(36) == (1, 6)
    assert is_fundamental_discriminant(-7)
    assert not is_fundamental_discriminant(-9)
    with pytest.raises(ValueError):
        fundamental_part(-5)


def test_dirichlet_L_neg():
    # L(0, chi_d) = 2 h(d) / w(d) for d < 0
    assert dirichlet_L_neg(0, -3) == Fraction(1, 3)
    assert dirichlet_L_neg(0, -4) == Fraction(1, 2)
    assert dirichlet_L_neg(0, -7) == 1
    assert dirichlet_L_neg(0, -23) == 3
    # Euler: L(-2, chi_{-4}) = -1/2
    assert dirichlet_L_neg(2, -4) == Fraction(-1, 2)
    assert dirichlet_L_neg(1, 1) == Fraction(-1, 12)


def test_cohen_H():
    assert cohen_H(2, 4) == Fraction(-7, 12)
    assert cohen_H(1, 3) == Fraction(1, 3)
    assert cohen_H(1, 4) == Fraction(1, 2)
    assert cohen_H(1, 23) == 3
    assert cohen_H(2, 0) == Fraction(1, 120)
    assert cohen_H(2, 2) == 0
    assert cohen_H(2, 3) == 0  # support is N = 0, 1 mod 4 when r is even


def test_qexpansion():
    a = QExpansion([1, 2, 3], 3)
    b = QExpansion([0, 1], 3)
    assert (a * b).coeffs == [0, 1, 2]
    assert (a + b).coeffs == [1, 3, 3]
    assert (a ** 2).coeffs == [1, 4, 10]
    assert a.rescale(2).coeffs == [1, 0, 2, 0, 3, 0]
    assert a.shift(1).coeffs == [0, 1, 2, 3]


def test_half_power_scalar():
    x = HalfPowerScalar(2, Fraction(12), 1)  # 12 * 2^(1/2) = 3 * 2^(5/2)
    assert x.unit == 3 and x.e == 5
    assert not x.is_rational()
    y = x * x
    assert y.to_fraction() == 288
    z = HalfPowerScalar(2, Fraction(1), 1) + HalfPowerScalar(2, Fraction(1), 3)
    assert z.unit == 3 and z.e == 1
    with pytest.raises(ValueError):
        HalfPowerScalar(2, Fraction(1), 0) + HalfPowerScalar(2, Fraction(1), 1)


def test_symmetric_laurent_eval():
    # (X + 1/X) evaluated where a_p = p^{kappa-1/2}(X + 1/X)
    p, kappa = 2, 9
    ap = Fraction(-24)  # any rational works for the identity below
    poly = SymmetricLaurentPoly.from_rational(p, {1: Fraction(1)})
    v = poly.evaluate_hecke(ap, kappa)
    assert v == HalfPowerScalar(p, ap, -(2 * kappa - 1))
    # (X+1/X)^2 = (X^2 + 1/X^2) + 2
    sq = poly * poly
    assert sq.coeffs[0].to_fraction() == 2
    v2 = sq.evaluate_hecke(ap, kappa)
    assert (v * v) == v2
