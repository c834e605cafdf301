"""Smith normal form and row Hermite form over Z, Q and Q[z, 1/z]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .matrix import RingMatrix
from .rings import euclidean_domain


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == S`` with ``S`` diagonal and d_1 | d_2 | ... on its diagonal."""

    S: RingMatrix
    U: RingMatrix
    V: RingMatrix
    V_inv: RingMatrix

    def diagonal(self) -> list:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    def invariant_factors(self) -> list:
        """Nonzero diagonal entries, in order."""
        return [d for d in self.diagonal() if not _zero(d)]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors())


def _zero(x) -> bool:
    return x == 0 if not hasattr(x, "is_zero") else x.is_zero()


def _identity(ring, n):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def _quo_rem(dom, a, b):
    # any Euclidean division will do here; the canonical Laurent remainder is slow
    if hasattr(a, "divmod_uni"):
        return a.divmod_uni(b)
    return dom.divmod(a, b)


def smith_normal_form(A: RingMatrix) -> SNFResult:
    """Smith normal form with transformation matrices.

    Pivots are chosen by smallest Euclidean norm (absolute value, or span of
    a Laurent polynomial) to keep coefficients small.  Raises
    :class:`NotAPIDError` for multivariate Laurent rings.
    """
    ring = A.ring
    dom = euclidean_domain(ring)
    m, n = A.rows, A.cols
    S = A.tolist()
    U = _identity(ring, m)
    V = _identity(ring, n)
    Vi = _identity(ring, n)

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for M in (S, V):
                for r in M:
                    r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        for M in (S, U):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                if not _zero(rs[k]):
                    rd[k] = rd[k] - q * rs[k]

    def add_col(dst, src, q):
        for M in (S, V):
            for r in M:
                if not _zero(r[src]):
                    r[dst] = r[dst] - q * r[src]
        Vi[src] = [a + q * b for a, b in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, n):
        cands = [(dom.norm(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if not _zero(S[i][j])]
        if not cands:
            break
        _, i, j = min(cands)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if not _zero(S[i][t]):
                    q, r = _quo_rem(dom, S[i][t], S[t][t])
                    add_row(i, t, q)
                    clean = clean and _zero(r)
            for j in range(t + 1, n):
                if not _zero(S[t][j]):
                    q, r = _quo_rem(dom, S[t][j], S[t][t])
                    add_col(j, t, q)
                    clean = clean and _zero(r)
            if not clean:
                # a remainder of smaller norm appeared in row or column t
                best = (dom.norm(S[t][t]), t, t)
                for i in range(t + 1, m):
                    if not _zero(S[i][t]):
                        best = min(best, (dom.norm(S[i][t]), i, t))
                for j in range(t + 1, n):
                    if not _zero(S[t][j]):
                        best = min(best, (dom.norm(S[t][j]), t, j))
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if not _zero(S[i][j]) and not _zero(_quo_rem(dom, S[i][j], S[t][t])[1])), None)
            if bad is None:
                break
            # fold the offending row into row t so the next pass shrinks the pivot
            add_row(t, bad[0], -ring.one())
        unit, _ = dom.normalize(S[t][t])
        S[t] = [unit * x for x in S[t]]
        U[t] = [unit * x for x in U[t]]
        t += 1

    return SNFResult(
        S=RingMatrix.from_rows(ring, S, cols=n),
        U=RingMatrix.from_rows(ring, U, cols=m),
        V=RingMatrix.from_rows(ring, V, cols=n),
        V_inv=RingMatrix.from_rows(ring, Vi, cols=n),
    )


def _primitive(row: list) -> list:
    """Scale a Laurent row by a rational unit so its coefficients are coprime integers."""
    coeffs = [c for x in row for _, c in x.items()]
    if not coeffs:
        return row
    num = reduce(gcd, (c.numerator for c in coeffs))
    den = reduce(lcm, (c.denominator for c in coeffs))
    f = Fraction(den, num)
    return row if f == 1 else [x.scale(f) for x in row]


def hermite_form(A: RingMatrix) -> RingMatrix:
    """Canonical basis of the row span of ``A`` (row-style Hermite normal form).

    Pivots are normalized and entries above each pivot are reduced modulo the
    pivot, so two matrices have the same row span iff their Hermite forms agree.
    Zero rows are dropped.
    """
    ring = A.ring
    dom = euclidean_domain(ring)
    rows = [list(r) for r in A.entries]
    n = A.cols
    out: list[list] = []
    pivots: list[int] = []
    for col in range(n):
        live = [r for r in rows if not _zero(r[col])]
        rows = [r for r in rows if _zero(r[col])]
        if not live:
            continue
        # gcd the column by repeated Euclidean steps
        while len(live) > 1:
            live.sort(key=lambda r: dom.norm(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q, _ = _quo_rem(dom, r[col], p[col])
                r = [a - q * b for a, b in zip(r, p)]
                if ring.is_laurent:
                    r = _primitive(r)
                if _zero(r[col]):
                    rows.append(r)
                else:
                    nxt.append(r)
            live = nxt
        p = live[0]
        unit, _ = dom.normalize(p[col])
        p = [unit * x for x in p]
        for prev in out:
            q, _ = dom.divmod(prev[col], p[col])
            if not _zero(q):
                for k in range(n):
                    prev[k] = prev[k] - q * p[k]
        out.append(p)
        pivots.append(col)
    return RingMatrix.from_rows(ring, out, cols=n)
