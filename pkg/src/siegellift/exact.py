"""Exact arithmetic helpers: Bernoulli numbers, quadratic characters,
L-values at non-positive integers, class number sums, q-expansions and
scalars that carry a half power of a prime.

Everything here is Fraction-based.  No floating point enters any value
that is returned to a caller.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, Iterable, List, Tuple

__all__ = [
    "bernoulli",
    "bernoulli_poly",
    "zeta_neg",
    "kronecker",
    "is_fundamental_discriminant",
    "fundamental_part",
    "dirichlet_L_neg",
    "cohen_H",
    "factorize",
    "divisors",
    "moebius",
    "QExpansion",
    "HalfPowerScalar",
    "SymmetricLaurentPoly",
    "chebyshev_power_values",
]


# ---------------------------------------------------------------------------
# Bernoulli numbers and rigid zeta values
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """nth Bernoulli number with the B_1 = -1/2 convention."""
    if n < 0:
        raise ValueError("negative index")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    # recursion sum_{j=0}^{n} C(n+1, j) B_j = 0
    total = Fraction(0)
    c = 1  # binomial(n+1, j), updated in place
    for j in range(n):
        total += c * bernoulli(j)
        c = c * (n + 1 - j) // (j + 1)
    return -total / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    """Bernoulli polynomial B_n(x)."""
    total = Fraction(0)
    c = 1
    for j in range(n + 1):
        total += c * bernoulli(j) * x ** (n - j)
        c = c * (n - j) // (j + 1)
    return total


def zeta_neg(n: int) -> Fraction:
    """zeta(-n) for integer n >= 0; zeta(0) = -1/2, zeta(-1) = -1/12."""
    if n < 0:
        raise ValueError("zeta_neg wants n >= 0")
    if n == 0:
        return Fraction(-1, 2)
    if n % 2 == 0:
        return Fraction(0)
    return -bernoulli(n + 1) / (n + 1)


# ---------------------------------------------------------------------------
# Quadratic characters
# ---------------------------------------------------------------------------

def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # strip twos from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol (a|n) for odd n > 0 by reciprocity
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of |n| by trial division; fine at our sizes."""
    n = abs(n)
    if n == 0:
        raise ValueError("factorize(0)")
    out: Dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> List[int]:
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p ** k for d in ds for k in range(e + 1)]
    return sorted(ds)


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d % 4 == 1:
        f = factorize(d)
        return all(e == 1 for e in f.values())
    if d % 4 == 0:
        m = d // 4
        if m % 4 in (2, 3):
            f = factorize(m)
            return all(e == 1 for e in f.values())
    return False


def fundamental_part(D: int) -> Tuple[int, int]:
    """Split a discriminant D (= 0, 1 mod 4, D != 0) as D = d * f**2 with
    d a fundamental discriminant.  Returns (d, f)."""
    if D == 0 or D % 4 in (2, 3):
        raise ValueError("not a discriminant: %d" % D)
    sign = 1 if D > 0 else -1
    f = 1
    m = abs(D)
    for p, e in factorize(m).items():
        k = e // 2
        if p == 2:
            pass  # handled below via the mod-4 adjustment
        f *= p ** k
        m //= p ** (2 * k)
    d = sign * m
    # pull back one factor of 2 from f if the squarefree kernel is 2,3 mod 4
    while d % 4 in (2, 3):
        if f % 2:
            raise AssertionError("discriminant bookkeeping broke")
        d *= 4
        f //= 2
    assert d * f * f == D and is_fundamental_discriminant(d)
    return d, f


# ---------------------------------------------------------------------------
# L-values at non-positive integers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def dirichlet_L_neg(n: int, d: int) -> Fraction:
    """L(-n, chi_d) for n >= 0 and d a fundamental discriminant.

    Computed through the generalized Bernoulli number
    B_{n+1, chi} = |d|^n * sum_a chi(a) B_{n+1}(a/|d|).
    """
    if not is_fundamental_discriminant(d):
        raise ValueError("d must be fundamental")
    if n < 0:
        raise ValueError("want n >= 0")
    if d == 1:
        return zeta_neg(n)
    m = abs(d)
    B = Fraction(0)
    for a in range(1, m + 1):
        ch = kronecker(d, a)
        if ch:
            B += ch * bernoulli_poly(n + 1, Fraction(a, m))
    B *= Fraction(m) ** n
    return -B / (n + 1)


def _sigma(k: int, n: int) -> int:
    return sum(d ** k for d in divisors(n))


@lru_cache(maxsize=None)
def cohen_H(r: int, N: int) -> Fraction:
    """Cohen's class number function H(r, N) for r >= 1, N >= 0.

    H(r, 0) = zeta(1 - 2r).  For N > 0 with (-1)^r N = d f^2, d fundamental:
        H(r, N) = L(1-r, chi_d) * sum_{e | f} mu(e) chi_d(e) e^{r-1} sigma_{2r-1}(f/e)
    and 0 when (-1)^r N is not a discriminant.
    """
    if r < 1 or N < 0:
        raise ValueError("bad arguments to cohen_H")
    if N == 0:
        return zeta_neg(2 * r - 1)
    D = N if r % 2 == 0 else -N
    if D % 4 in (2, 3):
        return Fraction(0)
    d, f = fundamental_part(D)
    s = Fraction(0)
    for e in divisors(f):
        mu = moebius(e)
        if mu == 0:
            continue
        ch = kronecker(d, e)
        if ch == 0:
            continue
        s += mu * ch * e ** (r - 1) * _sigma(2 * r - 1, f // e)
    return dirichlet_L_neg(r - 1, d) * s


# ---------------------------------------------------------------------------
# q-expansions
# ---------------------------------------------------------------------------

class QExpansion:
    """Truncated power series sum a_n q^n, exact rational coefficients.

    prec is exclusive: coefficients are known for 0 <= n < prec.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Iterable, prec: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if prec is None:
            prec = len(cs)
        if len(cs) < prec:
            cs += [Fraction(0)] * (prec - len(cs))
        self.coeffs = cs[:prec]
        self.prec = prec

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n < self.prec:
            raise IndexError("coefficient %d beyond precision %d" % (n, self.prec))
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.prec

    def _binop_prec(self, other: "QExpansion") -> int:
        return min(self.prec, other.prec)

    def __add__(self, other: "QExpansion") -> "QExpansion":
        n = self._binop_prec(other)
        return QExpansion([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        n = self._binop_prec(other)
        return QExpansion([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QExpansion([c * other for c in self.coeffs], self.prec)
        n = self._binop_prec(other)
        out = [Fraction(0)] * n
        a, b = self.coeffs, other.coeffs
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return QExpansion(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QExpansion":
        if k < 0:
            raise ValueError("negative power")
        out = QExpansion([1], self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, n: int) -> "QExpansion":
        """Multiply by q^n."""
        return QExpansion([Fraction(0)] * n + self.coeffs, self.prec + n)

    def truncate(self, prec: int) -> "QExpansion":
        return QExpansion(self.coeffs[:prec], min(prec, self.prec))

    def rescale(self, m: int) -> "QExpansion":
        """Substitute q -> q^m."""
        out = [Fraction(0)] * (self.prec * m)
        for n, c in enumerate(self.coeffs):
            out[n * m] = c
        return QExpansion(out, self.prec * m)

    def __eq__(self, other) -> bool:
        n = self._binop_prec(other)
        return self.coeffs[:n] == other.coeffs[:n]

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        return "QExpansion([%s, ...], prec=%d)" % (head, self.prec)


# ---------------------------------------------------------------------------
# Scalars of the shape (rational) * p^(e/2)
# ---------------------------------------------------------------------------

class HalfPowerScalar:
    """A value u * p^(e/2) with u a rational unit at p and e an integer.

    The p-content of the rational part is folded into e on construction,
    so rationality is exactly "e is even".
    """

    __slots__ = ("p", "unit", "e")

    def __init__(self, p: int, value: Fraction, e: int = 0):
        value = Fraction(value)
        if value == 0:
            self.p, self.unit, self.e = p, Fraction(0), 0
            return
        num, den = value.numerator, value.denominator
        while num % p == 0:
            num //= p
            e += 2
        while den % p == 0:
            den //= p
            e -= 2
        self.p = p
        self.unit = Fraction(num, den)
        self.e = e

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_rational(self) -> bool:
        return self.is_zero() or self.e % 2 == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("residual half power p^(%d/2) is irrational" % self.e)
        if self.is_zero():
            return Fraction(0)
        return self.unit * Fraction(self.p) ** (self.e // 2)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HalfPowerScalar(self.p, self.unit * other, self.e)
        if self.p != other.p:
            raise ValueError("mixed primes")
        return HalfPowerScalar(self.p, self.unit * other.unit, self.e + other.e)

    __rmul__ = __mul__

    def __add__(self, other: "HalfPowerScalar") -> "HalfPowerScalar":
        if isinstance(other, (int, Fraction)):
            other = HalfPowerScalar(self.p, Fraction(other))
        if self.p != other.p:
            raise ValueError("mixed primes")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if (self.e - other.e) % 2:
            raise ValueError("cannot add p^(%d/2) to p^(%d/2)" % (self.e, other.e))
        lo = min(self.e, other.e)
        u = self.unit * self.p ** ((self.e - lo) // 2) + \
            other.unit * self.p ** ((other.e - lo) // 2)
        return HalfPowerScalar(self.p, u, lo)

    def __neg__(self) -> "HalfPowerScalar":
        return HalfPowerScalar(self.p, -self.unit, self.e)

    def __sub__(self, other) -> "HalfPowerScalar":
        if isinstance(other, (int, Fraction)):
            other = HalfPowerScalar(self.p, Fraction(other))
        return self + (-other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = HalfPowerScalar(self.p, Fraction(other))
        return (self.is_zero() and other.is_zero()) or \
            (self.p == other.p and self.unit == other.unit and self.e == other.e)

    def __repr__(self) -> str:
        return "HalfPowerScalar(%d, %s, e=%d)" % (self.p, self.unit, self.e)


# ---------------------------------------------------------------------------
# symmetric Laurent polynomials in X + 1/X
# ---------------------------------------------------------------------------

class SymmetricLaurentPoly:
    """c_0 + sum_{j>0} c_j (X^j + X^-j) with HalfPowerScalar coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Dict[int, HalfPowerScalar]):
        self.p = p
        self.coeffs = {j: c for j, c in coeffs.items() if not c.is_zero()}
        if any(j < 0 for j in self.coeffs):
            raise ValueError("indices must be >= 0")

    @classmethod
    def from_rational(cls, p: int, coeffs: Dict[int, Fraction]) -> "SymmetricLaurentPoly":
        return cls(p, {j: HalfPowerScalar(p, Fraction(c)) for j, c in coeffs.items()})

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HalfPowerScalar)):
            return SymmetricLaurentPoly(self.p, {j: c * other for j, c in self.coeffs.items()})
        if self.p != other.p:
            raise ValueError("mixed primes")
        out: Dict[int, HalfPowerScalar] = {}

        def acc(j, v):
            out[j] = out.get(j, HalfPowerScalar(self.p, Fraction(0))) + v

        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                v = a * b
                if i == 0 or j == 0:
                    acc(i + j, v)
                elif i == j:
                    acc(2 * i, v)
                    acc(0, v * 2)
                else:
                    acc(i + j, v)
                    acc(abs(i - j), v)
        return SymmetricLaurentPoly(self.p, out)

    __rmul__ = __mul__

    def __add__(self, other: "SymmetricLaurentPoly") -> "SymmetricLaurentPoly":
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, HalfPowerScalar(self.p, Fraction(0))) + c
        return SymmetricLaurentPoly(self.p, out)

    def evaluate_hecke(self, a_p: Fraction, kappa: int) -> HalfPowerScalar:
        """Value at X = p^{s_p} where a_p = p^{kappa - 1/2}(X + 1/X).

        Uses P_0 = 2, P_1 = a_p, P_{j+1} = a_p P_j - p^{2 kappa - 1} P_{j-1},
        so X^j + X^-j = P_j(a_p) p^{-j(2 kappa - 1)/2}; only the p-power
        bookkeeping is exact, X itself is never materialized.
        """
        p = self.p
        vals = chebyshev_power_values(a_p, p, kappa, self.degree())
        total = HalfPowerScalar(p, Fraction(0))
        for j, c in self.coeffs.items():
            if j == 0:
                total = total + c
            else:
                total = total + c * HalfPowerScalar(p, vals[j], -j * (2 * kappa - 1))
        return total

    def __eq__(self, other) -> bool:
        return self.p == other.p and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return "SymmetricLaurentPoly(%d, %r)" % (self.p, self.coeffs)


def chebyshev_power_values(a_p: Fraction, p: int, kappa: int, jmax: int) -> List[Fraction]:
    """[P_0, ..., P_jmax] with P_j(a_p) = (X^j + X^-j) p^{j(2 kappa - 1)/2}."""
    vals = [Fraction(2), Fraction(a_p)]
    w = Fraction(p) ** (2 * kappa - 1)
    for _ in range(2, jmax + 1):
        vals.append(a_p * vals[-1] - w * vals[-2])
    return vals[: jmax + 1]
