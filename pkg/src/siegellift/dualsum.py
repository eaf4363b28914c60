"""Local representation densities by summation over submodules.

Let H_k be the split even unimodular form of rank 2k (k hyperbolic
planes) and T a half-integral form of size m.  Writing the congruence
count through additive characters and swapping summation gives, with
t = p^{-k},

    alpha_e(t) = sum_D |K_D| t^(log_p |D|) prod_{i<r_D} (1 - p^i t)

where D runs over subgroups of (Z/p^e)^m such that the trace pairing of
T kills K_D = {symmetric Z mod p^e with all rows in D}, r_D counts the
parts of the type of D that are < e, and |K_D| = prod_{i<=j}
p^{min(o_i, o_j)} for D of type (o_1, ..., o_m).  The identity

    alpha_e(p^{-k}) = p^{e(m(m+1)/2 - 2km)} N_e(k)

with N_e(k) the number of X in M_{2k x m}(Z/p^e) satisfying
X' H_k X = 2T half-integrally (diagonal of T mod p^e, off-diagonal of
2T mod p^e) holds for every e and k; for e large alpha_e becomes
independent of e and equals the Siegel series numerator.

`representation_count` performs the honest congruence count with no
shared code, so the two sides cross-check each other.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import numpy as np

from .quadform import HalfIntegralMatrix

__all__ = [
    "density_polynomial",
    "representation_count",
    "admissible_subgroup_count",
]


# ---------------------------------------------------------------------------
# integer matrix utilities (small sizes)
# ---------------------------------------------------------------------------

def _hnf_key(rows: List[List[int]], m: int, q: int) -> Tuple[Tuple[int, ...], ...]:
    """Canonical upper-triangular basis of the lattice spanned by rows
    and q Z^m.  Serves as a dedup key for subgroups of (Z/q)^m."""
    work = [list(r) for r in rows]
    for i in range(m):
        e = [0] * m
        e[i] = q
        work.append(e)
    basis: List[List[int]] = []
    col = 0
    while col < m:
        pool = [r for r in work if any(r[col:])]
        # eliminate on column `col`
        while True:
            nz = [r for r in pool if r[col]]
            if not nz:
                basis.append([0] * m)
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            done = True
            for r in nz:
                if r is piv:
                    continue
                f = r[col] // piv[col]
                for j in range(m):
                    r[j] -= f * piv[j]
                if r[col]:
                    done = False
            if done:
                if piv[col] < 0:
                    for j in range(m):
                        piv[j] = -piv[j]
                basis.append(piv)
                pool.remove(piv)
                work = pool
                break
        col += 1
    # reduce entries above each pivot, left to right so that fixes propagate
    for i in range(m):
        if basis[i][i] == 0:
            continue
        for r in range(i):
            f = basis[r][i] // basis[i][i]
            if f:
                for j in range(m):
                    basis[r][j] -= f * basis[i][j]
    return tuple(tuple(r) for r in basis)


def _smith_basis(rows: Sequence[Sequence[int]], m: int, p: int, e: int
                 ) -> List[Tuple[int, Tuple[int, ...]]]:
    """Adapted basis of the subgroup of (Z/p^e)^m generated by `rows`.

    Returns [(o_i, w_i)] with the subgroup equal to the direct sum of
    the cyclic groups generated by p^(e - o_i) w_i, the rows w_i being
    part of a basis of Z^m.  Parts with o_i = 0 are dropped.
    """
    q = p ** e
    M = [list(r) for r in rows]
    for i in range(m):
        v = [0] * m
        v[i] = q
        M.append(v)
    n = len(M)
    W = [[1 if i == j else 0 for j in range(m)] for i in range(m)]  # C^-1

    def col_addmul(j_src: int, j_dst: int, f: int) -> None:
        # column op col_dst += f * col_src; W <- E^-1 W
        for r in range(n):
            M[r][j_dst] += f * M[r][j_src]
        for t in range(m):
            W[j_src][t] -= f * W[j_dst][t]

    def col_swap(j1: int, j2: int) -> None:
        for r in range(n):
            M[r][j1], M[r][j2] = M[r][j2], M[r][j1]
        W[j1], W[j2] = W[j2], W[j1]

    diag: List[int] = []
    top = 0
    for pos in range(m):
        while True:
            best = None
            for i in range(top, n):
                for j in range(pos, m):
                    v = M[i][j]
                    if v and (best is None or abs(v) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise AssertionError("unexpected rank drop")
            bi, bj = best
            if bi != top:
                M[top], M[bi] = M[bi], M[top]
            if bj != pos:
                col_swap(pos, bj)
            piv = M[top][pos]
            clean = True
            for i in range(top + 1, n):
                f = M[i][pos] // piv
                if f:
                    for j in range(m):
                        M[i][j] -= f * M[top][j]
                if M[i][pos]:
                    clean = False
            for j in range(pos + 1, m):
                f = M[top][j] // piv
                if f:
                    col_addmul(pos, j, -f)
                if M[top][j]:
                    clean = False
            if clean:
                break
        diag.append(abs(M[top][pos]))
        top += 1
    out = []
    for i in range(m):
        a = 0
        d = diag[i]
        while d % p == 0 and a < e:
            d //= p
            a += 1
        o = e - a
        if o > 0:
            out.append((o, tuple(x % q for x in W[i])))
    out.sort(key=lambda ow: -ow[0])
    return out


# ---------------------------------------------------------------------------
# admissibility: trace pairing of T vanishes on K_D
# ---------------------------------------------------------------------------

def _admissible(basis: List[Tuple[int, Tuple[int, ...]]],
                T: HalfIntegralMatrix, p: int, e: int) -> bool:
    m = T.m
    A = T.even
    for i, (o, w) in enumerate(basis):
        # generator p^(e-o) E_ii of K_D: Q(w) = 0 mod p^o
        if T.quad(w) % p ** o:
            return False
        for oj, wj in basis[i + 1:]:
            pairing = sum(w[s] * A[s][t] * wj[t] for s in range(m) for t in range(m))
            if pairing % p ** min(o, oj):
                return False
    return True


# ---------------------------------------------------------------------------
# candidate elements
# ---------------------------------------------------------------------------

def _candidate_levels(T: HalfIntegralMatrix, p: int, e: int
                      ) -> List[Tuple[int, np.ndarray]]:
    """For each valuation a, the elements p^a g with g primitive mod
    p^(e-a) and Q(g) = 0 mod p^(e-a); a necessary condition for the
    element to sit inside an admissible subgroup."""
    m = T.m
    A = np.array(T.even, dtype=np.int64)
    out = []
    for a in range(e):
        q = p ** (e - a)
        grids = np.meshgrid(*[np.arange(q)] * m, indexing="ij")
        g = np.stack([x.ravel() for x in grids], axis=1)  # (q^m, m)
        prim = (g % p != 0).any(axis=1)
        g = g[prim]
        vals = np.einsum("ni,ij,nj->n", g, A, g) // 2 % q
        g = g[vals == 0]
        out.append((a, (g * p ** a) % p ** e))
    return out


# ---------------------------------------------------------------------------
# the submodule sum
# ---------------------------------------------------------------------------

def _weight(type_parts: Tuple[int, ...], m: int, p: int, e: int, t_shift_out: List) -> Tuple[int, int, List[int]]:
    """(|K_D|, t-power, list of (1 - p^i t) factors encoded by i)."""
    o = list(type_parts) + [0] * (m - len(type_parts))
    k = 1
    for i in range(m):
        for j in range(i, m):
            k *= p ** min(o[i], o[j])
    r = m - sum(1 for x in o if x == e)
    return k, sum(o), list(range(r))


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def density_polynomial(T: HalfIntegralMatrix, p: int, e: int) -> List[int]:
    """Coefficients of alpha_e(t), by summing over admissible subgroups."""
    m = T.m
    q = p ** e
    A2 = T.even
    levels = _candidate_levels(T, p, e)
    acc: List[int] = [0] * (e * m + m + 2)

    def add_weight(parts: Tuple[int, ...]) -> None:
        k, tpow, factors = _weight(parts, m, p, e, [])
        poly = [k]
        for i in factors:
            poly = _poly_mul(poly, [1, -(p ** i)])
        for j, c in enumerate(poly):
            acc[tpow + j] += c

    # BFS over admissible subgroups, deduplicated by canonical basis
    root_key = _hnf_key([], m, q)
    seen = {root_key}
    add_weight(())
    frontier: List[Tuple[Tuple, List[List[int]], List[Tuple[int, Tuple[int, ...]]]]] = [
        (root_key, [], [])]
    A2np = np.array(A2, dtype=np.int64)

    while frontier:
        new_frontier = []
        for key, gens, basis in frontier:
            hnf = [list(r) for r in key]
            gen_scaled = [(e - o, np.array(w, dtype=np.int64)) for o, w in basis]
            for a, cand in levels:
                if len(cand) == 0:
                    continue
                ok = np.ones(len(cand), dtype=bool)
                for ai, w in gen_scaled:
                    bi = (w * p ** ai) % q
                    mod = p ** (e + min(a, ai))
                    pair = cand @ (A2np @ bi)
                    ok &= (pair % mod) == 0
                sel = cand[ok]
                if len(sel) == 0:
                    continue
                # reduce candidates modulo the current subgroup
                red = sel.copy()
                for i in range(m - 1, -1, -1):
                    d = hnf[i][i]
                    f = red[:, i] // d
                    red -= f[:, None] * np.array(hnf[i], dtype=np.int64)[None, :]
                red %= q
                nontrivial = (red != 0).any(axis=1)
                reps = np.unique(red[nontrivial], axis=0)
                for rep in reps:
                    child_gens = gens + [ [int(x) for x in rep] ]
                    child_key = _hnf_key([list(g) for g in child_gens], m, q)
                    if child_key in seen:
                        continue
                    seen.add(child_key)
                    child_basis = _smith_basis(child_gens, m, p, e)
                    if not _admissible(child_basis, T, p, e):
                        continue
                    add_weight(tuple(o for o, _ in child_basis))
                    new_frontier.append((child_key, child_gens, child_basis))
        frontier = new_frontier

    while acc and acc[-1] == 0:
        acc.pop()
    return acc


# ---------------------------------------------------------------------------
# the honest congruence count
# ---------------------------------------------------------------------------

def _hyperbolic_gram(k: int) -> np.ndarray:
    H = np.zeros((2 * k, 2 * k), dtype=np.int64)
    for i in range(k):
        H[2 * i, 2 * i + 1] = 1
        H[2 * i + 1, 2 * i] = 1
    return H


def _columns(p: int, e: int, dim: int) -> np.ndarray:
    q = p ** e
    grids = np.meshgrid(*[np.arange(q)] * dim, indexing="ij")
    return np.stack([x.ravel() for x in grids], axis=1).astype(np.int64)


def representation_count(T: HalfIntegralMatrix, p: int, e: int, k: int) -> int:
    """#{X in M_{2k x m}(Z/p^e): X' H_k X = 2T half-integrally}.

    Condition: diagonal entries of T mod p^e, off-diagonal entries of 2T
    mod p^e.  Vectorized column-by-column; intended for small p^(2ke).
    """
    m = T.m
    q = p ** e
    H = _hyperbolic_gram(k)
    cols = _columns(p, e, 2 * k)
    if len(cols) > 1 << 21:
        raise ValueError("column space too large for the oracle")
    qv = (np.einsum("ni,ij,nj->n", cols, H, cols) // 2) % q  # Q(col) mod p^e
    Hc = (cols @ H) % q  # pairing rows
    diag_masks = [qv == (T.even[i][i] // 2) % q for i in range(m)]
    if m == 2:
        total = 0
        target = T.even[0][1] % q
        idx1 = np.nonzero(diag_masks[0])[0]
        m2 = diag_masks[1]
        colsf = cols.astype(np.float64)
        Hcf = Hc.astype(np.float64)
        for lo in range(0, len(idx1), 64):
            chunk = idx1[lo:lo + 64]
            pair = (colsf[m2] @ Hcf[chunk].T).astype(np.int64) % q
            total += int(np.count_nonzero(pair == target))
        return total
    if m == 4:
        return _count_quaternary(T, q, cols, qv, Hc, diag_masks)
    raise ValueError("oracle supports sizes 2 and 4")


def _count_quaternary(T, q, cols, qv, Hc, diag_masks) -> int:
    A = T.even
    n = len(cols)
    if n > 7000:
        raise ValueError("column space too large for the quaternary oracle")
    m1, m2, m3, m4 = diag_masks
    t12, t13, t14 = A[0][1] % q, A[0][2] % q, A[0][3] % q
    t23, t24, t34 = A[1][2] % q, A[1][3] % q, A[2][3] % q
    # pair table only between the (smallish) diagonal-valid column sets
    i3 = np.nonzero(m3)[0]
    i4 = np.nonzero(m4)[0]
    B34 = ((cols[i3] @ Hc[i4].T) % q == t34).astype(np.int64)
    total = 0
    for a in np.nonzero(m1)[0]:
        Pa = (cols @ Hc[a]) % q
        idx_b = np.nonzero(m2 & (Pa == t12))[0]
        if len(idx_b) == 0:
            continue
        c_ok = np.nonzero(Pa[i3] == t13)[0]  # positions within i3
        d_ok = np.nonzero(Pa[i4] == t14)[0]
        if len(c_ok) == 0 or len(d_ok) == 0:
            continue
        for b in idx_b:
            pc = (cols[i3[c_ok]] @ Hc[b]) % q
            pd = (cols[i4[d_ok]] @ Hc[b]) % q
            cc = c_ok[pc == t23]
            dd = d_ok[pd == t24]
            if len(cc) and len(dd):
                total += int(B34[np.ix_(cc, dd)].sum())
    return total
