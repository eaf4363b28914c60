"""Siegel series polynomials F_p(T, t) and their symmetric normalization.

F_p is obtained from the stabilized density polynomial alpha(t) of
`dualsum` by the exact division

    F(t) = alpha(t) (1 - chi p^n t) / ((1 - t) prod_{j=1..n} (1 - p^{2j} t^2))

for T of size m = 2n with chi = chi_d(p) attached to the fundamental
part d of the discriminant.  F has integer coefficients, constant term
1 and degree 2 f_p; the substitution X^(-f) F(p^-(2n+1)/2 X) must be
symmetric under X -> 1/X, which is asserted, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .dualsum import density_polynomial
from .exact import HalfPowerScalar, SymmetricLaurentPoly, kronecker
from .quadform import HalfIntegralMatrix, invariants, jordan_splitting

__all__ = [
    "SiegelPoly",
    "siegel_poly",
    "normalized_series",
    "local_factor_value",
    "binary_reference_poly",
]


@dataclass(frozen=True)
class SiegelPoly:
    p: int
    coeffs: Tuple[int, ...]   # ascending in t = p^-s
    f_p: int                  # half the degree
    chi: int                  # chi_d(p)
    e_used: int               # congruence depth at which alpha stabilized


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divexact(num: List[int], den: List[int]) -> List[int]:
    """num / den for den with constant term 1; asserts exactness."""
    assert den[0] == 1
    q = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(q)):
        q[i] = rem[i]
        if q[i]:
            for j in range(1, len(den)):
                rem[i + j] -= q[i] * den[j]
    if any(rem[len(q):]):
        raise AssertionError("gamma factor does not divide alpha")
    return q


_CACHE: Dict[Tuple, SiegelPoly] = {}


def siegel_poly(T: HalfIntegralMatrix, p: int) -> SiegelPoly:
    """Stabilized local Siegel series polynomial of an even-size form."""
    if T.m % 2:
        raise ValueError("even size required")
    js = jordan_splitting(T, p)
    key = js.symbol()
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    n = T.m // 2
    inv = invariants(T)
    chi = kronecker(inv.d, p)
    f_p = 0
    f = inv.f
    while f % p == 0:
        f //= p
        f_p += 1
    s_max = max(s for s, _ in js.blocks)
    e = max(1, s_max + 1)
    prev = density_polynomial(T, p, e)
    while True:
        cur = density_polynomial(T, p, e + 1)
        if cur == prev:
            break
        prev, e = cur, e + 1
        if e > s_max + 8:
            raise AssertionError("density polynomial failed to stabilize")
    num = _poly_mul(prev, [1, -chi * p ** n]) if chi else prev
    den = [1, -1]
    for j in range(1, n + 1):
        den = _poly_mul(den, [1, 0, -p ** (2 * j)])
    F = _poly_divexact(num, den)
    while F and F[-1] == 0:
        F.pop()
    if F[0] != 1:
        raise AssertionError("Siegel series constant term is %s" % F[0])
    if len(F) - 1 != 2 * f_p:
        raise AssertionError(
            "Siegel series degree %d, expected %d" % (len(F) - 1, 2 * f_p))
    out = SiegelPoly(p, tuple(F), f_p, chi, e + 1)
    _CACHE[key] = out
    return out


def normalized_series(T: HalfIntegralMatrix, p: int) -> SymmetricLaurentPoly:
    """X^(-f_p) F_p(T, p^-(2n+1)/2 X) as a symmetric Laurent polynomial.

    Raises if the functional equation fails, i.e. if the coefficient of
    X^j does not match that of X^-j.
    """
    n = T.m // 2
    sp = siegel_poly(T, p)
    f = sp.f_p
    coeffs: Dict[int, HalfPowerScalar] = {}
    for i, b in enumerate(sp.coeffs):
        j = i - f
        v = HalfPowerScalar(p, Fraction(b), -i * (2 * n + 1))
        if j < 0:
            continue
        mirror = HalfPowerScalar(p, Fraction(sp.coeffs[f - j]), -(f - j) * (2 * n + 1))
        if not (j == 0 or mirror == v):
            raise AssertionError("functional equation fails at X^%d" % j)
        coeffs[j] = v
    return SymmetricLaurentPoly(p, coeffs)


def local_factor_value(T: HalfIntegralMatrix, p: int, a_p: Fraction,
                       kappa: int) -> HalfPowerScalar:
    """p^(f_p (kappa - 1/2)) times the normalized series at X = p^(s_p).

    The Satake point satisfies a_p = p^(kappa - 1/2)(X + 1/X); the result
    must have even residual half-power exponent, which callers assert.
    """
    sp = siegel_poly(T, p)
    series = normalized_series(T, p)
    val = series.evaluate_hecke(a_p, kappa)
    return val * HalfPowerScalar(p, Fraction(1), sp.f_p * (2 * kappa - 1))


def binary_reference_poly(p: int, lam: int, xi: int, c: int) -> List[int]:
    """Closed form of F_p for binary T, derived from the local factors of
    the Eisenstein class-number sum: parameters lam = f_p, xi = chi_d(p),
    c = ord_p(content T).  Test reference for the density engine."""
    coeffs: Dict[int, Fraction] = {}
    for i in range(min(c, lam) + 1):
        for j in range(lam - i + 1):
            k = 2 * lam - i - 2 * j
            coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(p) ** (3 * lam - i - 3 * j)
        if xi:
            for j in range(lam - i):
                k = 2 * lam - i - 1 - 2 * j
                coeffs[k] = coeffs.get(k, Fraction(0)) - xi * Fraction(p) ** (3 * lam - i - 2 - 3 * j)
    out = [0] * (2 * lam + 1)
    for k, v in coeffs.items():
        assert v.denominator == 1
        out[k] = int(v)
    return out
