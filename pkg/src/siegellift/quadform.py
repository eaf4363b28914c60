"""Half-integral symmetric matrices and their p-adic structure.

A form T of size m is stored through its even matrix A = 2T (integer
symmetric, even diagonal).  All invariants the lift needs are derived
from A: the discriminant D = (-1)^(m/2) det(A) for even m, its
fundamental splitting D = d f^2, the content, and a p-adic Jordan
splitting used as a cache key for local computations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterator, List, Sequence, Tuple

from .exact import factorize, fundamental_part, kronecker

__all__ = [
    "HalfIntegralMatrix",
    "FormInvariants",
    "JordanSplitting",
    "jordan_splitting",
    "enumerate_binary",
    "quaternary_catalog",
    "direct_sum",
    "random_unimodular",
    "parse_even_matrix",
    "class_number_by_reduction",
]

Matrix = Tuple[Tuple[int, ...], ...]


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def _det(rows: Matrix) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = tuple(r[:j] + r[j + 1:] for r in rows[1:])
            total += (-1) ** j * rows[0][j] * _det(minor)
    return total


class HalfIntegralMatrix:
    """Positive half-integral T, held as the even matrix 2T."""

    __slots__ = ("m", "even")

    def __init__(self, even: Sequence[Sequence[int]]):
        A = _as_matrix(even)
        m = len(A)
        if any(len(r) != m for r in A):
            raise ValueError("matrix is not square")
        if any(A[i][j] != A[j][i] for i in range(m) for j in range(m)):
            raise ValueError("matrix is not symmetric")
        if any(A[i][i] % 2 for i in range(m)):
            raise ValueError("diagonal of 2T must be even")
        self.m = m
        self.even = A

    @classmethod
    def from_form(cls, a: int, b: int, c: int) -> "HalfIntegralMatrix":
        """Binary form a x^2 + b x y + c y^2, i.e. 2T = [[2a, b], [b, 2c]]."""
        return cls([[2 * a, b], [b, 2 * c]])

    def det_even(self) -> int:
        return _det(self.even)

    def discriminant(self) -> int:
        """(-1)^(m/2) det(2T); only defined for even size."""
        if self.m % 2:
            raise ValueError("odd size has no discriminant of this shape")
        return (-1) ** (self.m // 2) * self.det_even()

    def content(self) -> int:
        """gcd of the coefficients of the form x -> x' T x."""
        g = 0
        for i in range(self.m):
            g = gcd(g, self.even[i][i] // 2)
            for j in range(i + 1, self.m):
                g = gcd(g, self.even[i][j])
        return g

    def is_positive_definite(self) -> bool:
        n = self.m
        rows = [[Fraction(x) for x in r] for r in self.even]
        for k in range(n):
            if rows[k][k] <= 0:
                return False
            for i in range(k + 1, n):
                fac = rows[i][k] / rows[k][k]
                for j in range(k, n):
                    rows[i][j] -= fac * rows[k][j]
        return True

    def transform(self, U: Sequence[Sequence[int]]) -> "HalfIntegralMatrix":
        """U' (2T) U for an integer matrix U."""
        U = _as_matrix(U)
        m = self.m
        AU = [[sum(self.even[i][k] * U[k][j] for k in range(m)) for j in range(m)]
              for i in range(m)]
        B = [[sum(U[k][i] * AU[k][j] for k in range(m)) for j in range(m)]
             for i in range(m)]
        return HalfIntegralMatrix(B)

    def quad(self, x: Sequence[int]) -> int:
        """x' T x, an integer for integer x."""
        v = sum(self.even[i][j] * x[i] * x[j] for i in range(self.m) for j in range(self.m))
        assert v % 2 == 0
        return v // 2

    def key(self) -> Matrix:
        return self.even

    def __eq__(self, other) -> bool:
        return isinstance(other, HalfIntegralMatrix) and self.even == other.even

    def __hash__(self) -> int:
        return hash(self.even)

    def __repr__(self) -> str:
        return "HalfIntegralMatrix(%r)" % (self.even,)


@dataclass(frozen=True)
class FormInvariants:
    """Arithmetic invariants of an even-size form."""

    size: int
    disc: int           # D = (-1)^(m/2) det(2T)
    d: int              # fundamental part of D
    f: int              # D = d f^2
    content: int
    f_p: Tuple[Tuple[int, int], ...]  # (p, ord_p f) for p | f

    @property
    def chi_values(self) -> Dict[int, int]:
        return {p: kronecker(self.d, p) for p, _ in self.f_p}


def invariants(T: HalfIntegralMatrix) -> FormInvariants:
    D = T.discriminant()
    if D == 0:
        raise ValueError("form is degenerate")
    d, f = fundamental_part(D)
    fp = tuple(sorted(factorize(f).items())) if f > 1 else ()
    return FormInvariants(T.m, D, d, f, T.content(), fp)


# ---------------------------------------------------------------------------
# p-adic Jordan splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JordanSplitting:
    """Blocks (scale, unit_block) with the form = perp of p^scale * block."""

    p: int
    blocks: Tuple[Tuple[int, Matrix], ...]

    def symbol(self) -> Tuple:
        """Hashable key; identical symbols imply Z_p-equivalent forms."""
        return (self.p, self.blocks)


def _val(p: int, x: Fraction) -> int:
    if x == 0:
        return 10 ** 9
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def jordan_splitting(T: HalfIntegralMatrix, p: int) -> JordanSplitting:
    """Jordan splitting of the even matrix 2T over Z_p.

    Deterministic pivoting, so equal inputs give equal outputs; unit parts
    are reduced (mod p, or mod 8 at p = 2) to make the symbol a useful
    cache key.  At p = 2 blocks of size 1 and 2 can occur.
    """
    m = T.m
    A = [[Fraction(x) for x in row] for row in T.even]
    blocks: List[Tuple[int, Matrix]] = []
    idx = list(range(m))

    def vmin() -> Tuple[int, int, int]:
        # diagonal entries first so they win valuation ties
        best = (10 ** 9, -1, -1)
        for a in range(len(idx)):
            v = _val(p, A[idx[a]][idx[a]])
            if v < best[0]:
                best = (v, a, a)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                v = _val(p, A[idx[a]][idx[b]])
                if v < best[0]:
                    best = (v, a, b)
        return best

    while idx:
        v, a, b = vmin()
        if v >= 10 ** 9:
            raise ValueError("degenerate form")
        if p != 2 and a != b:
            # move the minimal entry onto the diagonal
            i, j = idx[a], idx[b]
            s = 1
            if _val(p, A[i][i] + 2 * s * A[i][j] + A[j][j]) > v:
                s = -1
            for k in range(m):
                A[i][k] += s * A[j][k]
            for k in range(m):
                A[k][i] += s * A[k][j]
            v, a, b = vmin()
            assert a == b
        if a == b:
            i = idx[a]
            piv = A[i][i]
            for t in idx:
                if t == i:
                    continue
                fac = A[t][i] / piv
                for k in range(m):
                    A[t][k] -= fac * A[i][k]
                for k in range(m):
                    A[k][t] -= fac * A[k][i]
            u = piv / Fraction(p) ** v
            assert u.denominator % p and u.numerator % p
            blocks.append((v, _reduce_unit_block(p, ((u,),))))
            idx.remove(i)
        else:
            # p = 2 with strictly off-diagonal minimum: split a 2x2 block
            i, j = idx[a], idx[b]
            B = [[A[i][i], A[i][j]], [A[i][j], A[j][j]]]
            det = B[0][0] * B[1][1] - B[0][1] ** 2
            assert _val(2, det) == 2 * v
            for t in idx:
                if t in (i, j):
                    continue
                # coefficients solving [x y] B = [A[t][i], A[t][j]]
                x = (A[t][i] * B[1][1] - A[t][j] * B[0][1]) / det
                y = (A[t][j] * B[0][0] - A[t][i] * B[0][1]) / det
                for k in range(m):
                    A[t][k] -= x * A[i][k] + y * A[j][k]
                for k in range(m):
                    A[k][t] -= x * A[k][i] + y * A[k][j]
            q = Fraction(2) ** v
            ub = ((B[0][0] / q, B[0][1] / q), (B[0][1] / q, B[1][1] / q))
            blocks.append((v, _reduce_unit_block(2, ub)))
            idx.remove(j)
            idx.remove(i)
    blocks.sort(key=lambda sb: (sb[0], len(sb[1]), sb[1]))
    return JordanSplitting(p, tuple(blocks))


def _reduce_unit_block(p: int, block) -> Matrix:
    n = len(block)
    if n == 1:
        u = Fraction(block[0][0])
        assert u.denominator % p and u.numerator % p
        if p == 2:
            r = u.numerator * pow(u.denominator, -1, 8) % 8
        else:
            r = 1 if kronecker(u.numerator * u.denominator, p) == 1 else _nonresidue(p)
        return ((r,),)
    # p = 2, even 2x2 unit block: classified by det mod 8 (-1: hyperbolic)
    det = block[0][0] * block[1][1] - block[0][1] ** 2
    r = det.numerator * pow(det.denominator, -1, 8) % 8
    if r == 7:
        return ((0, 1), (1, 0))
    if r == 3:
        return ((2, 1), (1, 2))
    raise AssertionError("even 2x2 unit block with det = %s mod 8" % r)


def _nonresidue(p: int) -> int:
    for r in range(2, p):
        if kronecker(r, p) == -1:
            return r
    raise AssertionError


# ---------------------------------------------------------------------------
# form enumeration and transforms
# ---------------------------------------------------------------------------

def enumerate_binary(disc_bound: int, exact: int | None = None) -> Iterator[HalfIntegralMatrix]:
    """Reduced positive binary forms with det(2T) <= disc_bound.

    Reduction is the classical -a < b <= a <= c (b >= 0 if a = c), so every
    GL_2(Z)-class with |disc| in range appears exactly once.
    """
    a = 1
    while 3 * a * a <= disc_bound:
        for b in range(-a + 1, a + 1):
            c = a
            while 4 * a * c - b * b <= disc_bound:
                if not (a == c and b < 0):
                    det = 4 * a * c - b * b
                    if exact is None or det == exact:
                        yield HalfIntegralMatrix.from_form(a, b, c)
                c += 1
        a += 1


def direct_sum(*parts: HalfIntegralMatrix) -> HalfIntegralMatrix:
    m = sum(t.m for t in parts)
    rows = [[0] * m for _ in range(m)]
    off = 0
    for t in parts:
        for i in range(t.m):
            for j in range(t.m):
                rows[off + i][off + j] = t.even[i][j]
        off += t.m
    return HalfIntegralMatrix(rows)


def quaternary_catalog() -> List[HalfIntegralMatrix]:
    """Positive even quaternary forms with all diagonal entries of 2T = 2.

    These are Gram matrices of the rank-4 root lattices; dets 4, 5, 8, 9,
    12, 16 cover both residues 0 and 1 mod 4.
    """
    D4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    A4 = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    A3A1 = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, 0], [0, 0, 0, 2]]
    A2A2 = [[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -1], [0, 0, -1, 2]]
    A2A1A1 = [[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]
    A1x4 = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]
    return [HalfIntegralMatrix(g) for g in (D4, A4, A3A1, A2A2, A2A1A1, A1x4)]


def random_unimodular(m: int, seed: int, steps: int = 12) -> Matrix:
    """Random element of GL_m(Z) built from elementary operations.

    Entries stay small (shear coefficients in -2..2) so transformed forms
    remain cheap to handle exactly.
    """
    rng = random.Random(seed)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i, j = rng.sample(range(m), 2)
        if kind == 0:
            c = rng.choice([-2, -1, 1, 2])
            for k in range(m):
                U[i][k] += c * U[j][k]
        elif kind == 1:
            U[i], U[j] = U[j], U[i]
        else:
            for k in range(m):
                U[i][k] = -U[i][k]
    return _as_matrix(U)


def parse_even_matrix(text: str) -> HalfIntegralMatrix:
    """Parse '2,1;1,2'-style rows of the even matrix 2T."""
    rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
    return HalfIntegralMatrix(rows)


def class_number_by_reduction(D: int) -> int:
    """h(D) for D < 0: count of reduced primitive forms of discriminant D.

    Convention: forms a x^2 + b xy + c y^2 with b^2 - 4ac = D, counted with
    the SL_2 reduction -a < b <= a <= c (b >= 0 if a = c).
    """
    if D >= 0 or D % 4 in (2, 3):
        raise ValueError("not a negative discriminant")
    count = 0
    for t in enumerate_binary(-D, exact=-D):
        a, b, c = t.even[0][0] // 2, t.even[0][1], t.even[1][1] // 2
        if gcd(gcd(a, b), c) == 1:
            count += 1
    return count
