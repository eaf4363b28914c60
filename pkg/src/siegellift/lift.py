"""Fourier coefficients of the degree-2n lift of an elliptic eigenform.

For T > 0 of size 2n with (-1)^n det(2T) = d f^2 (d fundamental):

    a(T) = c(|d|) * prod_{p | f} G_p,
    G_p  = p^(f_p (kappa - 1/2)) * Ftilde_p(T, p^(s_p)),

where c is the plus-space table of weight kappa + 1/2, Ftilde_p the
normalized Siegel series polynomial, and p^(s_p) the Satake point of
the elliptic eigenform of weight 2 kappa (entering only through a(p)
via the Chebyshev substitution).  Every G_p is asserted to have even
residual half-power exponent, i.e. to be rational; that parity identity
is a theorem, but here it is executed, not trusted.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from .elliptic import eigenform
from .exact import factorize
from .kohnen import PLUS_SPACE_KAPPAS, PlusSpaceForm, plus_space_eigenform
from .quadform import HalfIntegralMatrix, enumerate_binary, invariants
from .siegel import local_factor_value

__all__ = [
    "LiftJob",
    "LiftCoefficient",
    "make_job",
    "lift_coefficient",
    "fourier_table",
    "enumerate_quaternary",
    "maass_check",
    "standard_l_factors",
]


@dataclass(frozen=True)
class LiftJob:
    kappa: int
    n: int
    h: PlusSpaceForm
    a: Dict[int, Fraction]    # elliptic eigenvalues a(p), p prime

    @property
    def weight(self) -> int:
        return self.kappa + self.n


@dataclass(frozen=True)
class LiftCoefficient:
    T: HalfIntegralMatrix
    value: Fraction
    local_factors: Dict[int, Fraction]
    c_arg: int                # |d|, the fundamental point of the square class

    def record(self) -> dict:
        inv = invariants(self.T)
        return {
            "gram": [list(r) for r in self.T.even],
            "det2T": abs(inv.disc),
            "D": inv.disc,
            "d": inv.d,
            "f": inv.f,
            "c_arg": self.c_arg,
            "local_factors": {str(p): str(v) for p, v in sorted(self.local_factors.items())},
            "value": str(self.value),
        }


def _primes_upto(n: int) -> List[int]:
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = False
    return out


def make_job(kappa: int, n: int, coeff_bound: int = 600) -> LiftJob:
    """Validated job; rejects kappa + n odd and unsupported kappa."""
    if kappa not in PLUS_SPACE_KAPPAS:
        raise ValueError("kappa = %d not supported" % kappa)
    if (kappa + n) % 2:
        raise ValueError("kappa + n = %d must be even" % (kappa + n))
    if n < 1:
        raise ValueError("n must be positive")
    h = plus_space_eigenform(kappa, n, coeff_bound)
    pmax = int(coeff_bound ** 0.5) + 1
    f = eigenform(2 * kappa, pmax + 1)
    a = {p: Fraction(f[p]) for p in _primes_upto(pmax)}
    return LiftJob(kappa, n, h, a)


def lift_coefficient(job: LiftJob, T: HalfIntegralMatrix) -> LiftCoefficient:
    if T.m != 2 * job.n:
        raise ValueError("size %d form in a degree-%d job" % (T.m, 2 * job.n))
    if not T.is_positive_definite():
        raise ValueError("form is not positive definite")
    inv = invariants(T)
    c_arg = abs(inv.d)
    value = job.h.coeff(c_arg)
    locs: Dict[int, Fraction] = {}
    for p, _ in inv.f_p:
        g = local_factor_value(T, p, job.a[p], job.kappa)
        if g.e % 2:
            raise AssertionError(
                "half power survives at p = %d for %r" % (p, T.even))
        locs[p] = g.to_fraction()
        value *= locs[p]
    return LiftCoefficient(T, value, locs, c_arg)


def enumerate_quaternary(trace_bound: int) -> Iterator[HalfIntegralMatrix]:
    """Positive definite size-4 forms with trace T <= bound, exhaustively
    over matrices (not classes), deterministic order."""
    diags: List[Tuple[int, ...]] = []

    def diag_rec(row: int, left: int, acc: List[int]) -> None:
        # entries of 2T, even, nondecreasing; `left` is the remaining
        # trace budget of T
        if row == 4:
            diags.append(tuple(acc))
            return
        v = acc[-1] if acc else 2
        while v // 2 + (3 - row) <= left:
            diag_rec(row + 1, left - v // 2, acc + [v])
            v += 2

    diag_rec(0, trace_bound, [])
    for dg in diags:
        pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
        bounds = []
        for i, j in pairs:
            b = 1
            while (b + 1) ** 2 < dg[i] * dg[j]:
                b += 1
            bounds.append(b)

        def off_rec(k: int, vals: List[int]) -> Iterator[HalfIntegralMatrix]:
            if k == 6:
                A = [[0] * 4 for _ in range(4)]
                for i in range(4):
                    A[i][i] = dg[i]
                for (i, j), x in zip(pairs, vals):
                    A[i][j] = A[j][i] = x
                T = HalfIntegralMatrix(A)
                if T.is_positive_definite():
                    yield T
                return
            for x in range(-bounds[k], bounds[k] + 1):
                yield from off_rec(k + 1, vals + [x])

        yield from off_rec(0, [])


def _sort_key(T: HalfIntegralMatrix):
    return (abs(T.det_even()), tuple(x for row in T.even for x in row))


def _entry(args):
    job, T = args
    return lift_coefficient(job, T)


def fourier_table(job: LiftJob, max_det: Optional[int] = None,
                  max_trace: Optional[int] = None,
                  jobs: int = 1) -> List[LiftCoefficient]:
    """Coefficients over a reduced (n=1) or exhaustive (n=2) enumeration,
    sorted by determinant then lexicographically."""
    if job.n == 1:
        if max_det is None:
            raise ValueError("max_det required for degree 2 tables")
        forms = list(enumerate_binary(max_det))
    elif job.n == 2:
        if max_trace is None:
            raise ValueError("max_trace required for degree 4 tables")
        forms = list(enumerate_quaternary(max_trace))
    else:
        raise ValueError("no enumeration for n = %d" % job.n)
    forms.sort(key=_sort_key)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_entry, [(job, T) for T in forms], chunksize=8))
    return [lift_coefficient(job, T) for T in forms]


@dataclass
class MaassReport:
    checked: int
    failures: List[Tuple[Tuple, str]]

    @property
    def ok(self) -> bool:
        return not self.failures


def maass_check(job: LiftJob, max_det: int) -> MaassReport:
    """a(T) = sum_{e | content T} e^kappa c(det(2T)/e^2) for n = 1."""
    if job.n != 1:
        raise ValueError("Maass relation is a degree-2 statement")
    rep = MaassReport(0, [])
    for T in enumerate_binary(max_det):
        rep.checked += 1
        lhs = lift_coefficient(job, T).value
        det = T.det_even()
        rhs = Fraction(0)
        for e in range(1, T.content() + 1):
            if T.content() % e == 0:
                rhs += Fraction(e) ** job.kappa * job.h.coeff(det // (e * e))
        if lhs != rhs:
            rep.failures.append((tuple(map(tuple, T.even)),
                                 "a(T)=%s, divisor sum=%s" % (lhs, rhs)))
    return rep


def standard_l_factors(job: LiftJob, p: int) -> List[Fraction]:
    """Ascending coefficients in x = p^-s of the degree-(4n+1) Euler
    factor (1 - x) prod_{i=1..2n} (classical factor of f at s + n - i + kappa).
    Display only; not verified against Hecke operators."""
    ap = job.a.get(p)
    if ap is None:
        raise ValueError("a(%d) not tabulated in this job" % p)
    poly = [Fraction(1), Fraction(-1)]

    def mul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    for i in range(1, 2 * job.n + 1):
        shift = job.n - i + job.kappa
        poly = mul(poly, [Fraction(1), -ap * Fraction(p) ** (-shift),
                          Fraction(p) ** (2 * job.kappa - 1 - 2 * shift)])
    return poly
