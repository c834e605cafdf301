"""Ranks over fraction fields, determinants and rational kernels."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly
from .matrix import RingMatrix, _is_zero


def _rational_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    n = len(rows[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            if r[col] != 0:
                f = r[col] / p[col]
                for k in range(col, n):
                    if p[k] != 0:
                        r[k] -= f * p[k]
        rank += 1
    return rank


def _bareiss_rank(rows: list[list]) -> int:
    """Fraction-free elimination; every division is exact by Sylvester's identity."""
    M = [list(r) for r in rows]
    m = len(M)
    if not m:
        return 0
    n = len(M[0])
    prev = None
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if not _is_zero(M[i][col])), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank]
        for i in range(rank + 1, m):
            r = M[i]
            for k in range(col + 1, n):
                v = p[col] * r[k] - r[col] * p[k]
                r[k] = v if prev is None else v.exquo(prev)
            r[col] = r[col] * 0
        prev = p[col]
        rank += 1
    return rank


def fraction_field_rank(A: RingMatrix) -> int:
    """Rank of ``A`` over Q, Q(z) or Q(z_1, ..., z_n)."""
    if A.rows == 0 or A.cols == 0:
        return 0
    if A.ring.is_laurent:
        return _bareiss_rank(A.tolist())
    return _rational_rank([[Fraction(x) for x in r] for r in A.entries])


def evaluate_matrix(A: RingMatrix, point: Sequence) -> list[list[Fraction]]:
    return [[x.evaluate(point) for x in r] for r in A.entries]


def evaluation_rank(A: RingMatrix, trials: int = 3, seed: int = 0) -> int:
    """Lower bound for :func:`fraction_field_rank` by substituting random rationals.

    Exact at a generic point; used as an independent cross-check only.
    """
    if not A.ring.is_laurent:
        return fraction_field_rank(A)
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        pt = [Fraction(rng.choice([-1, 1]) * rng.randint(2, 97), rng.randint(1, 89)) for _ in range(A.ring.nvars)]
        best = max(best, _rational_rank(evaluate_matrix(A, pt)))
    return best


def determinant(A: RingMatrix):
    """Determinant by Bareiss elimination (exact over every supported ring)."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return A.ring.one()
    M = A.tolist()
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not _is_zero(M[i][k])), None)
        if piv is None:
            return A.ring.zero()
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                if prev is None:
                    M[i][j] = v
                elif isinstance(v, LaurentPoly):
                    M[i][j] = v.exquo(prev)
                else:
                    q = Fraction(v) / prev
                    M[i][j] = int(q) if A.ring.kind == "integers" else q
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def rational_kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows @ x == 0} over Q (reduced row echelon form)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis
