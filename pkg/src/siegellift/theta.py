"""Theta series of the two even unimodular rank-16 lattices.

Degree-g coefficients are honest tuple counts #{(x_1..x_g) : Gram = 2T},
obtained from complete short-vector lists.  The lists come from bounded
enumeration with exact rational Cholesky pruning; no floats anywhere.
The degree-4 difference of the two series (zero through degree 3) is the
independent oracle for the weight-8 degree-4 lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Tuple

import numpy as np

from .quadform import HalfIntegralMatrix

__all__ = [
    "EvenLattice",
    "e8e8",
    "d16plus",
    "short_vectors",
    "theta_coefficient",
    "schottky_coefficient",
]

NORM_BOUND_MAX = 8


@dataclass(frozen=True)
class EvenLattice:
    name: str
    gram: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        A = [[Fraction(x) for x in row] for row in self.gram]
        m = len(A)
        if any(self.gram[i][i] % 2 for i in range(m)):
            raise ValueError("lattice is not even")
        det = Fraction(1)
        for c in range(m):
            piv = next((i for i in range(c, m) if A[i][c]), None)
            if piv is None:
                raise ValueError("degenerate gram matrix")
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                det = -det
            det *= A[c][c]
            for i in range(c + 1, m):
                f = A[i][c] / A[c][c]
                if f:
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
        object.__setattr__(self, "_det", det)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def is_unimodular(self) -> bool:
        return self._det == 1


def _chain_gram(vs: List[List[Fraction]]) -> Tuple[Tuple[int, ...], ...]:
    g = []
    for v in vs:
        row = []
        for w in vs:
            x = sum(a * b for a, b in zip(v, w))
            assert x.denominator == 1
            row.append(int(x))
        g.append(tuple(row))
    return tuple(g)


def _d_plus_basis(m: int) -> List[List[Fraction]]:
    """e_1 + e_2, then e_i - e_{i+1} (i <= m-2), then (1/2, ..., 1/2).

    A genuine basis of D_m^+ (Gram determinant 1, checked on build)."""
    v = [Fraction(0)] * m
    v[0] = v[1] = Fraction(1)
    vs = [v]
    for i in range(m - 2):
        v = [Fraction(0)] * m
        v[i], v[i + 1] = Fraction(1), Fraction(-1)
        vs.append(v)
    vs.append([Fraction(1, 2)] * m)
    return vs


def e8e8() -> EvenLattice:
    e8 = _chain_gram(_d_plus_basis(8))
    g = [[0] * 16 for _ in range(16)]
    for i in range(8):
        for j in range(8):
            g[i][j] = e8[i][j]
            g[8 + i][8 + j] = e8[i][j]
    L = EvenLattice("e8e8", tuple(tuple(r) for r in g))
    assert L.is_unimodular()
    return L


def d16plus() -> EvenLattice:
    L = EvenLattice("d16p", _chain_gram(_d_plus_basis(16)))
    assert L.is_unimodular()
    return L


def _ldl(gram) -> Tuple[List[Fraction], List[List[Fraction]]]:
    m = len(gram)
    A = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * m
    r = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        d[i] = A[i][i]
        for j in range(i, m):
            r[i][j] = A[i][j] / d[i]
        for k in range(i + 1, m):
            for l in range(k, m):
                A[k][l] -= d[i] * r[i][k] * r[i][l]
                A[l][k] = A[k][l]
    return d, r


def _sqrt_floor(x: Fraction) -> int:
    return isqrt(x.numerator * x.denominator) // x.denominator


_SV_CACHE: Dict[Tuple[str, int], Dict[int, np.ndarray]] = {}


def short_vectors(L: EvenLattice, bound: int) -> Dict[int, np.ndarray]:
    """All lattice vectors of norm <= bound, keyed by norm, as coordinate
    rows in the lattice basis.  Complete lists, zero vector included.

    Breadth-first over coordinates (last to first), with all pruning
    decisions made on integers: the Cholesky data is scaled by the lcm M
    of its denominators, so the partial norm of a tail is the integer
    sum of d'_i (M x_i + c'_i)^2 over M^3.  Floats only propose candidate
    windows (with slack); acceptance is the exact integer inequality."""
    if bound > NORM_BOUND_MAX:
        raise ValueError("norm bound %d exceeds the desk-scale cap" % bound)
    key = (L.name, bound)
    hit = _SV_CACHE.get(key)
    if hit is not None:
        return hit
    m = L.dim
    d, r = _ldl(L.gram)
    M = 1
    for x in d:
        M = M * x.denominator // gcd(M, x.denominator)
    for row in r:
        for x in row:
            M = M * x.denominator // gcd(M, x.denominator)
    ds = [int(x * M) for x in d]
    rs = np.array([[int(x * M) for x in row] for row in r], dtype=np.int64)
    cap = bound * M ** 3
    assert max(ds) * (3 * M * (bound + 2)) ** 2 < 2 ** 62

    # states: X holds coordinates x_{i+1..m-1} (newest first), used the
    # scaled partial norm
    X = np.zeros((1, 0), dtype=np.int64)
    used = np.zeros(1, dtype=np.int64)
    for i in range(m - 1, -1, -1):
        cpr = X @ rs[i, i + 1:] if X.shape[1] else np.zeros(len(X), dtype=np.int64)
        budget = cap - used
        s = np.sqrt(budget.astype(np.float64) / ds[i])
        lo = np.floor((-s - cpr) / M).astype(np.int64) - 1
        width = (np.ceil((s - cpr) / M).astype(np.int64) + 2) - lo
        width = np.maximum(width, 0)
        idx = np.repeat(np.arange(len(X)), width)
        starts = np.concatenate(([0], np.cumsum(width)))[:-1]
        xi = lo[idx] + (np.arange(len(idx)) - starts[idx])
        u = M * xi + cpr[idx]
        term = ds[i] * u * u
        ok = term <= budget[idx]
        used = used[idx][ok] + term[ok]
        X = np.column_stack([xi[ok], X[idx[ok]]])
    assert not np.any(used % M ** 3)
    norms = used // M ** 3
    out: Dict[int, np.ndarray] = {}
    for nm in range(0, bound + 1, 2):
        sel = X[norms == nm]
        out[nm] = sel[np.lexsort(sel.T[::-1])] if len(sel) else sel
    _SV_CACHE[key] = out
    return out


def theta_coefficient(L: EvenLattice, T: HalfIntegralMatrix) -> int:
    """#{(x_1, ..., x_g) in L^g : <x_i, x_j> = (2T)_{ij}}, g = size of T."""
    g = T.m
    A2 = T.even
    norms = [A2[i][i] for i in range(g)]
    if any(nm < 0 for nm in norms):
        return 0
    sv = short_vectors(L, max(norms + [0]))
    if any(nm not in sv for nm in norms):
        return 0
    # float64 holds every value here exactly (all << 2^53); matmuls hit BLAS
    AL = np.array(L.gram, dtype=np.float64)
    order = sorted(range(g), key=lambda i: len(sv[norms[i]]))
    lists = [sv[norms[i]].astype(np.float64) for i in order]
    tgt = [[float(A2[order[i]][order[j]]) for j in range(g)] for i in range(g)]

    def pair_count(a: np.ndarray, b: np.ndarray, want: float) -> int:
        bp = (b @ AL).T
        total = 0
        step = max(1, (1 << 22) // max(1, len(b)))
        for i in range(0, len(a), step):
            total += int(np.count_nonzero(a[i:i + step] @ bp == want))
        return total

    def triple_count(a, b, c, t_ab, t_ac, t_bc) -> int:
        # sum over pairs (v_b, v_c) matching t_bc of the number of v_a
        # matching both; the count matrix is one boolean-to-float matmul
        if not (len(a) and len(b) and len(c)):
            return 0
        if len(b) > len(a) or len(c) > len(a):
            # contract over the largest list to keep the b x c block small
            if len(b) >= len(c):
                return triple_count(b, a, c, t_ab, t_bc, t_ac)
            return triple_count(c, a, b, t_ac, t_bc, t_ab)
        if len(c) > len(b):
            # the c x a incidence matrix is held whole, so c must be the
            # smaller of the two satellite lists
            b, c, t_ab, t_ac = c, b, t_ac, t_ab
        ca = (c @ AL) @ a.T == t_ac
        # float32 is exact for the 0/1 matmul: entries are bounded by
        # len(a), far below 2^24
        caf = ca.astype(np.float32)
        bA = b @ AL
        total = 0
        step = max(1, (1 << 24) // max(1, len(a)))
        for i in range(0, len(b), step):
            ba = bA[i:i + step] @ a.T == t_ab
            pbc = bA[i:i + step] @ c.T == t_bc
            counts = ba.astype(np.float32) @ caf.T
            total += int(counts[pbc].astype(np.float64).sum())
        return total

    def rec(k: int, cands: List[np.ndarray]) -> int:
        if k == g - 1:
            return len(cands[0])
        if k == g - 2:
            return pair_count(cands[0], cands[1], tgt[k][k + 1])
        if k == g - 3:
            return triple_count(cands[0], cands[1], cands[2],
                                tgt[k][k + 1], tgt[k][k + 2], tgt[k + 1][k + 2])
        piv, rest = cands[0], list(cands[1:])
        rest_pair = [c @ AL for c in rest]
        total = 0
        step = max(1, (1 << 22) // max(1, max(len(c) for c in rest)))
        for s in range(0, len(piv), step):
            blk = piv[s:s + step]
            pm = [rp @ blk.T for rp in rest_pair]
            for col in range(blk.shape[0]):
                nxt = []
                for j, c in enumerate(rest):
                    sub = c[pm[j][:, col] == tgt[k][k + 1 + j]]
                    if not len(sub):
                        break
                    nxt.append(sub)
                else:
                    total += rec(k + 1, nxt)
        return total

    return rec(0, lists)


_PAIR = None


def _lattices() -> Tuple[EvenLattice, EvenLattice]:
    global _PAIR
    if _PAIR is None:
        _PAIR = (e8e8(), d16plus())
    return _PAIR


def schottky_coefficient(T: HalfIntegralMatrix) -> int:
    """theta(E8+E8, T) - theta(D16+, T); zero for size <= 3."""
    A, B = _lattices()
    return theta_coefficient(A, T) - theta_coefficient(B, T)
