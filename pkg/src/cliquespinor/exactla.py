"""Exact linear algebra over the rationals, plus modular elimination.

Kernel computations in this package must be exact (zero tolerance), but
dense Fraction elimination is too slow for 2^n-dimensional spinor
spaces.  The workhorse is therefore Gaussian elimination mod a large
prime (vectorized with numpy int64), whose result is lifted back to the
rationals by rational reconstruction and then certified exactly by the
caller.  A pure-Fraction sparse elimination is kept as the fallback and
as the small-scale reference.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# Mersenne prime; (P-1)^2 still fits in int64, so products never overflow.
MOD_P = 2**31 - 1


def rank_fraction(rows) -> int:
    """Exact rank of a matrix given as an iterable of number rows."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def sparse_nullspace_fraction(rows, ncols: int) -> list[dict[int, Fraction]]:
    """Exact right-nullspace basis of a sparse matrix.

    ``rows`` is an iterable of {column: coefficient} dicts.  Returns one
    {column: Fraction} dict per free column, normalized so the free
    column carries coefficient 1.  Slow but exact; used as the fallback
    when modular reconstruction fails.
    """
    # incremental reduction to row echelon form, pivot rows keyed by pivot col
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = 1 / row[lead]
                pivots[lead] = {c: v * inv for c, v in row.items()}
                break
            f = row[lead]
            for c, v in piv.items():
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    # back-substitute so every pivot row is zero on other pivot columns
    for lead in sorted(pivots, reverse=True):
        row = pivots[lead]
        for c in [c for c in row if c != lead and c in pivots]:
            f = row[c]
            for cc, vv in pivots[c].items():
                nv = row.get(cc, Fraction(0)) - f * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for lead, row in pivots.items():
            coef = row.get(f)
            if coef:
                vec[lead] = -coef
        basis.append(vec)
    return basis


def nullspace_mod_p(mat: np.ndarray, p: int = MOD_P) -> np.ndarray:
    """Right-nullspace basis of an integer matrix over GF(p).

    Returns an array of shape (ncols, dim) whose columns span the
    nullspace, in reduced form: each free column carries 1 in its own
    slot and 0 in the other free slots.
    """
    m = np.ascontiguousarray(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    piv_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        piv_cols.append(c)
        r += 1
    free_cols = [c for c in range(ncols) if c not in set(piv_cols)]
    basis = np.zeros((ncols, len(free_cols)), dtype=np.int64)
    for k, f in enumerate(free_cols):
        basis[f, k] = 1
        for i, c in enumerate(piv_cols):
            basis[c, k] = (-int(m[i, f])) % p
    return basis


def rref_mod_p(mat: np.ndarray, p: int = MOD_P) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p) with its pivot columns."""
    m = np.ascontiguousarray(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    piv_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        piv_cols.append(c)
        r += 1
    return m[: len(piv_cols)], piv_cols


def rational_reconstruct(a: int, p: int = MOD_P) -> Fraction | None:
    """Lift a residue mod p to the unique small fraction n/d with
    |n|, d <= sqrt(p/2), if one exists (Wang's algorithm)."""
    a %= p
    if a == 0:
        return Fraction(0)
    bound = int((p // 2) ** 0.5)
    r0, r1 = p, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if abs(t1) > bound or t1 == 0:
        return None
    num, den = r1, t1
    if den < 0:
        num, den = -num, -den
    from math import gcd

    if gcd(num, den) != 1 or gcd(den, p) != 1:
        return None
    return Fraction(num, den)
