"""Plus-space eigenforms of half-integral weight and their local factors.

The eigenform h of weight kappa + 1/2 has coefficients c(t) supported on
t > 0 with sign * t = 0, 1 mod 4 (sign = (-1)^n).  It is realized in one
of two ways, chosen by the parity of kappa:

  * kappa odd: as the index-1 Jacobi cusp form of weight kappa + 1
    inside M_{k-4} E_{4,1} + M_{k-6} E_{6,1}, re-indexed by the
    discriminant D = 4m - r^2 (so t = D, with -t = 0, 1 mod 4);
  * kappa even: there is no odd-weight index-1 Jacobi form, so h is cut
    out of the span of theta^(2 kappa + 1 - 4j) F^j directly by the
    support condition t = 0, 1 mod 4 plus vanishing constant term
    (theta the weight-1/2 unary theta, F the weight-2 form on
    Gamma_0(4) with coefficients sigma_1 on odd indices).

Both constructions land in a one dimensional space; the dimension is
asserted, not assumed.  The factorization of c(t) through the
fundamental point of its square class (coefficient Hecke relations in
compressed form) is checked by `shimura_consistency`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .elliptic import eigenform, eisenstein
from .exact import (HalfPowerScalar, SymmetricLaurentPoly, cohen_H,
                    divisors, factorize, fundamental_part, kronecker)

__all__ = [
    "JacobiForm",
    "PlusSpaceForm",
    "PsiPoly",
    "PLUS_SPACE_KAPPAS",
    "jacobi_eisenstein",
    "jacobi_cusp_space",
    "plus_space_eigenform",
    "psi_poly",
    "shimura_consistency",
]

PLUS_SPACE_KAPPAS = (6, 8, 9, 10, 11, 13)


@dataclass(frozen=True)
class JacobiForm:
    """Index-1 form keyed by discriminant D >= 0 (absent keys are 0)."""

    weight: int
    coeffs: Dict[int, Fraction]

    def __getitem__(self, D: int) -> Fraction:
        return self.coeffs.get(D, Fraction(0))


@dataclass(frozen=True)
class PlusSpaceForm:
    kappa: int
    sign: int                      # (-1)^n; support is sign*t = 0,1 mod 4
    c: Dict[int, Fraction]         # t -> c(t), t >= 1, zeros omitted
    bound: int                     # table is complete for t <= bound

    def coeff(self, t: int) -> Fraction:
        if t < 1 or t > self.bound:
            raise KeyError("t = %d outside the computed table" % t)
        return self.c.get(t, Fraction(0))

    def support(self) -> List[int]:
        return sorted(self.c)


@dataclass(frozen=True)
class PsiPoly:
    p: int
    t: int
    f_exp: int
    poly: SymmetricLaurentPoly


# ---------------------------------------------------------------------------
# Integer power series helpers (plain lists; exact and fast enough here)

def _ser_mul(a: List[int], b: List[int], prec: int) -> List[int]:
    out = [0] * prec
    for i, x in enumerate(a[:prec]):
        if x:
            for j in range(min(len(b), prec - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _ser_pow(a: List[int], n: int, prec: int) -> List[int]:
    out = [1] + [0] * (prec - 1)
    base = a[:prec]
    while n:
        if n & 1:
            out = _ser_mul(out, base, prec)
        n >>= 1
        if n:
            base = _ser_mul(base, base, prec)
    return out


def _theta_series(prec: int) -> List[int]:
    t = [0] * prec
    t[0] = 1
    n = 1
    while n * n < prec:
        t[n * n] = 2
        n += 1
    return t


def _f_series(prec: int) -> List[int]:
    f = [0] * prec
    for n in range(1, prec, 2):
        f[n] = sum(divisors(n))
    return f


def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of the right kernel of the matrix given by `rows`."""
    mat = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -mat[i][free]
        basis.append(v)
    return basis


def _theta_plus_cusp(kappa: int, bound: int) -> Dict[int, Fraction]:
    """The one dimensional plus cusp space of weight kappa + 1/2 on
    Gamma_0(4), as a table t -> c(t) complete for t <= bound."""
    prec = bound + 1
    th = _theta_series(prec)
    f2 = _f_series(prec)
    mons = []
    j = 0
    while 2 * kappa + 1 - 4 * j >= 0:
        mons.append(_ser_mul(_ser_pow(th, 2 * kappa + 1 - 4 * j, prec),
                             _ser_pow(f2, j, prec), prec))
        j += 1
    bad = (2, 3) if kappa % 2 == 0 else (1, 2)
    rows = [[Fraction(m[0]) for m in mons]]
    for t in range(1, prec):
        if t % 4 in bad:
            rows.append([Fraction(m[t]) for m in mons])
    basis = _nullspace(rows, len(mons))
    if len(basis) != 1:
        raise AssertionError(
            "plus cusp space at kappa = %d has dimension %d, expected 1"
            % (kappa, len(basis)))
    x = basis[0]
    table: Dict[int, Fraction] = {}
    for t in range(1, prec):
        v = sum((xi * m[t] for xi, m in zip(x, mons)), Fraction(0))
        if t % 4 in bad and v:
            raise AssertionError("support leak at t = %d" % t)
        if v:
            table[t] = v
    return table


# ---------------------------------------------------------------------------
# Jacobi forms of index 1

def jacobi_eisenstein(k: int, bound: int) -> JacobiForm:
    """E_{k,1} normalized to C(0) = 1; C(D) = H(k-1, D)/H(k-1, 0)."""
    if k not in (4, 6):
        raise ValueError("only the weight 4 and 6 generators exist")
    h0 = cohen_H(k - 1, 0)
    coeffs = {}
    for D in range(bound + 1):
        if D % 4 in (0, 3):
            v = cohen_H(k - 1, D) / h0
            if v:
                coeffs[D] = v
    return JacobiForm(k, coeffs)


def _level_one_coeffs(weight: int, prec: int) -> Optional[List[Fraction]]:
    """q-coefficients of the one dimensional M_weight; None if M = 0."""
    if weight == 0:
        return [Fraction(1)] + [Fraction(0)] * (prec - 1)
    if weight % 2 or weight == 2 or weight < 0:
        return None
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    table = {4: e4, 6: e6, 8: e4 * e4, 10: e4 * e6}
    if weight not in table:
        raise ValueError("weight %d space is not one dimensional" % weight)
    return table[weight].coeffs


def jacobi_cusp_space(k: int, bound: int) -> List[JacobiForm]:
    """Basis of index-1 cusp forms of weight k, as D-tables to `bound`.

    Even k: cusp part of M_{k-4} E_{4,1} + M_{k-6} E_{6,1}.  Odd k: no
    holomorphic form exists; the table returned is the complementary
    plus-space realization (support D = 0, 1 mod 4) of the same
    one dimensional Hecke module.
    """
    if k % 2:
        if k - 1 not in PLUS_SPACE_KAPPAS:
            raise ValueError("unsupported weight %d" % k)
        return [JacobiForm(k, _theta_plus_cusp(k - 1, bound))]
    mprec = bound // 4 + 1
    e41 = jacobi_eisenstein(4, bound)
    e61 = jacobi_eisenstein(6, bound)
    gens: List[Dict[int, Fraction]] = []
    for weight, eis in ((k - 4, e41), (k - 6, e61)):
        f = _level_one_coeffs(weight, mprec)
        if f is None:
            continue
        tab: Dict[int, Fraction] = {}
        for D in range(bound + 1):
            if D % 4 in (0, 3):
                v = sum((f[m] * eis[D - 4 * m]
                         for m in range(min(mprec, D // 4 + 1))), Fraction(0))
                if v:
                    tab[D] = v
        gens.append(tab)
    rows = [[g.get(0, Fraction(0)) for g in gens]]
    out = []
    for v in _nullspace(rows, len(gens)):
        tab: Dict[int, Fraction] = {}
        for D in range(bound + 1):
            s = sum((vi * g.get(D, Fraction(0)) for vi, g in zip(v, gens)),
                    Fraction(0))
            if s:
                tab[D] = s
        out.append(JacobiForm(k, tab))
    return out


# ---------------------------------------------------------------------------
# The eigenform h and its factored coefficients

def plus_space_eigenform(kappa: int, n: int, bound: int) -> PlusSpaceForm:
    """c-table of h to t <= bound, first nonzero coefficient = 1."""
    if kappa not in PLUS_SPACE_KAPPAS:
        raise ValueError(
            "kappa = %d unsupported; the elliptic cusp space of weight %d "
            "must be one dimensional" % (kappa, 2 * kappa))
    if (kappa + n) % 2:
        raise ValueError("kappa + n = %d is odd" % (kappa + n))
    if kappa % 2:
        basis = jacobi_cusp_space(kappa + 1, bound)
        if len(basis) != 1:
            raise AssertionError("Jacobi cusp dimension %d" % len(basis))
        table = dict(basis[0].coeffs)
        table.pop(0, None)
    else:
        table = _theta_plus_cusp(kappa, bound)
    t0 = min(table)
    lead = table[t0]
    return PlusSpaceForm(kappa, -1 if n % 2 else 1,
                         {t: v / lead for t, v in table.items()}, bound)


def psi_poly(t: int, p: int, sign: int = 1) -> PsiPoly:
    """The local symmetric polynomial attached to sign*t at p.

    With sign*t = d f^2 (d fundamental) and fp = ord_p f:
        sum_{i=0..fp} X^(fp-2i) - chi_d(p) p^(-1/2) sum_{i=0..fp-1} X^(fp-1-2i).
    """
    tp = sign * t
    if tp % 4 not in (0, 1):
        raise ValueError("%d is not a discriminant" % tp)
    d, f = fundamental_part(tp)
    fp = 0
    while f % p == 0:
        f //= p
        fp += 1
    chi = kronecker(d, p)
    coeffs: Dict[int, HalfPowerScalar] = {}
    for j in range(fp % 2, fp + 1, 2):
        coeffs[j] = HalfPowerScalar(p, Fraction(1))
    if chi:
        for j in range((fp + 1) % 2, fp, 2):
            coeffs[j] = HalfPowerScalar(p, Fraction(-chi), -1)
    return PsiPoly(p, t, fp, SymmetricLaurentPoly(p, coeffs))


@dataclass
class ConsistencyReport:
    kappa: int
    checked: int
    violations: List[Tuple[int, str]]

    @property
    def ok(self) -> bool:
        return not self.violations


def shimura_consistency(h: PlusSpaceForm, bound: int | None = None) -> ConsistencyReport:
    """Check c(t) = c(t_fund) f_t^(kappa - 1/2) prod_p Psi_p(t, p^(s_p))
    for every t in the table, with the elliptic eigenvalues of weight
    2 kappa defining the points p^(s_p).  Half powers must cancel per
    prime; any failure is reported, none is expected."""
    kappa = h.kappa
    if bound is None:
        bound = h.bound
    fmax = int(bound ** 0.5) + 1
    f = eigenform(2 * kappa, fmax + 1)
    report = ConsistencyReport(kappa, 0, [])
    for t in range(1, bound + 1):
        tp = h.sign * t
        if tp % 4 not in (0, 1):
            continue
        report.checked += 1
        d, ft = fundamental_part(tp)
        t0 = h.sign * d
        val = h.c.get(t0, Fraction(0))
        for p, fp in factorize(ft).items():
            g = psi_poly(t, p, h.sign).poly.evaluate_hecke(Fraction(f[p]), kappa)
            g = g * HalfPowerScalar(p, Fraction(1), fp * (2 * kappa - 1))
            if g.e % 2:
                report.violations.append((t, "half power survives at p=%d" % p))
                break
            val *= g.to_fraction()
        else:
            if val != h.c.get(t, Fraction(0)):
                report.violations.append((t, "coefficient mismatch"))
    return report
