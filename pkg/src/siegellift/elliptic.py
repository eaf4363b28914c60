"""Level-one elliptic modular forms with exact coefficients.

Provides Eisenstein series, delta, and the normalized cuspidal eigenform
in each weight where the cusp space is one dimensional (12, 16, 18, 20,
22, 26).  Those are the only inputs the lift needs: for each prime p the
eigenvalue a(p) is just the q^p coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact import QExpansion, bernoulli, divisors

__all__ = [
    "eisenstein",
    "delta",
    "eigenform",
    "eigenvalue",
    "EIGENFORM_WEIGHTS",
]

EIGENFORM_WEIGHTS = (12, 16, 18, 20, 22, 26)


def _sigma(k: int, n: int) -> int:
    return sum(d ** k for d in divisors(n))


@lru_cache(maxsize=None)
def eisenstein(k: int, prec: int = 64) -> QExpansion:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, exact."""
    if k < 4 or k % 2:
        raise ValueError("weight must be even and >= 4")
    c = Fraction(-2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [c * _sigma(k - 1, n) for n in range(1, prec)]
    return QExpansion(coeffs, prec)


@lru_cache(maxsize=None)
def delta(prec: int = 64) -> QExpansion:
    """The discriminant form, via (E4^3 - E6^2)/1728."""
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    return (e4 ** 3 - e6 ** 2) * Fraction(1, 1728)


@lru_cache(maxsize=None)
def eigenform(weight: int, prec: int = 64) -> QExpansion:
    """Normalized Hecke eigenform of the given weight, a(1) = 1."""
    if weight not in EIGENFORM_WEIGHTS:
        raise ValueError(
            "cusp space of weight %d is not one dimensional; "
            "supported weights: %s" % (weight, EIGENFORM_WEIGHTS))
    f = delta(prec)
    extra = weight - 12
    # delta times a monomial in E4, E6 stays an eigenform in these weights
    while extra >= 4:
        if extra % 4 == 0:
            f = f * eisenstein(4, prec)
            extra -= 4
        else:
            f = f * eisenstein(6, prec)
            extra -= 6
    assert extra == 0
    return f


def eigenvalue(weight: int, p: int, prec: int | None = None) -> Fraction:
    """Hecke eigenvalue a(p); integral for these weights."""
    if prec is None:
        prec = p + 1
    f = eigenform(weight, max(prec, p + 1))
    a = f[p]
    assert a.denominator == 1
    return a
