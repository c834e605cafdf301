"""Reference computations written independently of the library code.

Nothing here imports l2dim, so agreement with the library is evidence
rather than a restatement.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, gcd


def rref_rank(rows) -> int:
    """Rank over Q by textbook Gauss-Jordan elimination."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    rank, ncols = 0, len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def det_int(M) -> int:
    """Determinant by Laplace expansion (tiny matrices only)."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det_int([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(n) if M[0][j])


def determinantal_invariant_factors(A) -> list[int]:
    """Invariant factors d_k = D_k / D_{k-1}, D_k the gcd of k x k minors."""
    m, n = len(A), len(A[0]) if A else 0
    D = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, det_int([[A[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, len(D))]


def central_binomial_return(n: int) -> Fraction:
    """p_{2n}(e) for the simple walk on Z."""
    return Fraction(comb(2 * n, n), 4 ** n)


def tree_closed_walks(n: int, d: int) -> int:
    """Closed walks of length 2n at a vertex of the d-regular tree.

    Closed form sum_{k=1}^{n} k/(2n-k) C(2n-k, n) d^k (d-1)^(n-k).
    """
    if n == 0:
        return 1
    total = sum(Fraction(k, 2 * n - k) * comb(2 * n - k, n) * d ** k * (d - 1) ** (n - k) for k in range(1, n + 1))
    assert total.denominator == 1
    return int(total)


def tree_closed_walks_dp(n: int, d: int) -> int:
    """Same count by dynamic programming over the distance from the root."""
    dist = {0: 1}
    for _ in range(2 * n):
        nxt: dict[int, int] = {}
        for r, c in dist.items():
            if r == 0:
                nxt[1] = nxt.get(1, 0) + c * d
            else:
                nxt[r - 1] = nxt.get(r - 1, 0) + c
                nxt[r + 1] = nxt.get(r + 1, 0) + c * (d - 1)
        dist = nxt
    return dist.get(0, 0)


def order_five_permutations(n: int):
    """All permutations s of range(n) with s^5 = id, built cycle by cycle."""
    def rec(perm, free):
        if not free:
            yield tuple(perm)
            return
        a = free[0]
        rest = free[1:]
        perm[a] = a
        yield from rec(perm, rest)
        perm[a] = None
        for others in itertools.permutations(rest, 4):
            cyc = (a,) + others
            for i in range(5):
                perm[cyc[i]] = cyc[(i + 1) % 5]
            yield from rec(perm, [x for x in rest if x not in others])
            for x in cyc:
                perm[x] = None

    yield from rec([None] * n, list(range(n)))


def homology_ranks_from_boundaries(ranks, mats) -> list[int]:
    """Rational Betti numbers of a chain complex given dense d_p matrices."""
    rk = [rref_rank(m) if m and m[0] else 0 for m in mats] + [0]
    return [n - (rk[p - 1] if p else 0) - rk[p] for p, n in enumerate(ranks)]
