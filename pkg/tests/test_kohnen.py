from fractions import Fraction

import pytest

from siegellift.exact import HalfPowerScalar, cohen_H, zeta_neg
from siegellift.kohnen import (PLUS_SPACE_KAPPAS, jacobi_cusp_space,
                               jacobi_eisenstein, plus_space_eigenform,
                               psi_poly, shimura_consistency)


def test_jacobi_eisenstein_normalization_and_values():
    e41 = jacobi_eisenstein(4, 20)
    assert e41[0] == 1
    assert e41[3] == cohen_H(3, 3) / zeta_neg(5)
    assert e41[2] == 0  # unsupported residue


def test_jacobi_cusp_dimensions():
    dims = {k: len(jacobi_cusp_space(k, 40)) for k in (7, 8, 9, 10, 11, 12, 14)}
    assert dims == {7: 1, 8: 0, 9: 1, 10: 1, 11: 1, 12: 1, 14: 1}


def test_plus_space_support_and_normalization():
    h = plus_space_eigenform(9, 1, 120)
    assert all(-t % 4 in (0, 1) for t in h.support())
    assert h.c[3] == 1
    g = plus_space_eigenform(6, 2, 120)
    assert all(t % 4 in (0, 1) for t in g.support())
    assert g.c[1] == 1


def test_plus_space_rejects_bad_parity_and_kappa():
    with pytest.raises(ValueError):
        plus_space_eigenform(9, 2, 50)
    with pytest.raises(ValueError):
        plus_space_eigenform(7, 1, 50)


def test_odd_kappa_constructions_agree():
    # Jacobi route vs direct theta/F plus-space cut: same table
    from siegellift.kohnen import _theta_plus_cusp
    for kappa in (9, 11):
        jac = jacobi_cusp_space(kappa + 1, 100)[0].coeffs
        alt = _theta_plus_cusp(kappa, 100)
        t0 = min(alt)
        jac = {t: v / jac[t0] for t, v in jac.items() if t}
        alt = {t: v / alt[t0] for t, v in alt.items()}
        assert jac == alt


def test_psi_poly_shapes():
    one = psi_poly(3, 5, -1)  # -3 fundamental at p = 5: f = 0
    assert one.f_exp == 0 and one.poly.coeffs == {0: HalfPowerScalar(5, Fraction(1))}
    pp = psi_poly(12, 2, -1)  # -12 = -3 * 2^2: f_2 = 1
    assert pp.f_exp == 1
    assert set(pp.poly.coeffs) == {0, 1}
    assert pp.poly.coeffs[1] == HalfPowerScalar(2, Fraction(1))
    # constant term is -chi_{-3}(2) 2^{-1/2}
    assert pp.poly.coeffs[0] == HalfPowerScalar(2, Fraction(1), -1)
    with pytest.raises(ValueError):
        psi_poly(2, 3, 1)


def test_psi_parity_bookkeeping():
    for t, p in ((48, 2), (45, 3), (100, 5)):
        pp = psi_poly(t, p, 1)
        for j, c in pp.poly.coeffs.items():
            assert j <= pp.f_exp
            # half-exponent parity tracks the distance to the top degree
            assert (c.e - (j - pp.f_exp)) % 2 == 0 or c.unit == 0


@pytest.mark.parametrize("kappa", PLUS_SPACE_KAPPAS)
def test_shimura_consistency_short(kappa):
    n = 1 if kappa % 2 else 2
    h = plus_space_eigenform(kappa, n, 200)
    rep = shimura_consistency(h)
    assert rep.ok and rep.checked == 100
