"""Return probabilities of simple random walks and Kesten spectral-radius evidence.

Walks are counted with integers: c_n(x) is the number of words of length n
over S that evaluate to x, so P_n(x) = c_n(x) / |S|^n.  The identity
p_{2n}(e) = sum_x P_n(x) P_n(x^-1) gives all even return probabilities
from n convolution steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .groups import FreeAbelianGroup, FreeGroup, GroupError

DEFAULT_SUPPORT_BOUND = 2_000_000

AMENABLE = "AmenableConsistent"
NONAMENABLE = "NonamenableEvidence"
INCONCLUSIVE = "Inconclusive"


class WalkSupportError(RuntimeError):
    pass


def check_generators(G, S: Sequence) -> list:
    if not S:
        raise GroupError("generating set is empty")
    S = [G.normal_form(s) for s in S]
    if len(set(S)) != len(S):
        raise GroupError("generating set has repeated elements")
    if G.identity in S:
        raise GroupError("generating set contains the identity")
    missing = [s for s in S if G.inv(s) not in S]
    if missing:
        raise GroupError(f"generating set is not symmetric: inverse of {missing[0]!r} missing")
    return S


def _is_standard(G, S) -> bool:
    return isinstance(G, (FreeGroup, FreeAbelianGroup)) and set(S) == set(G.standard_generators())


def _sparse_counts(G, S, N: int, bound: int) -> list[int]:
    """sum_x c_n(x) c_n(x^-1) for n = 1..N by direct convolution."""
    dist = {G.identity: 1}
    out = []
    for _ in range(N):
        nxt: dict = {}
        for x, c in dist.items():
            for s in S:
                y = G.mul(x, s)
                nxt[y] = nxt.get(y, 0) + c
        dist = nxt
        if len(dist) > bound:
            raise WalkSupportError(
                f"walk support has {len(dist)} elements, above the bound {bound}; lower the number of steps"
            )
        out.append(sum(c * dist.get(G.inv(x), 0) for x, c in dist.items()))
    return out


def _radial_counts(G, S, N: int, bound: int) -> list[int]:
    """Closed-walk counts of length 2n via the walk lumped along radial_key.

    Valid for the standard generators of Z^n and F_k, whose Cayley graphs have
    symmetries acting transitively on each level set of the key.
    """
    key = G.radial_key
    e = key(G.identity)
    dist = {e: 1}
    rep = {e: G.identity}
    out = []
    for step in range(1, 2 * N + 1):
        nxt: dict = {}
        nrep: dict = {}
        for k, c in dist.items():
            x = rep[k]
            for s in S:
                y = G.mul(x, s)
                ky = key(y)
                nxt[ky] = nxt.get(ky, 0) + c
                nrep.setdefault(ky, y)
        dist, rep = nxt, nrep
        if len(dist) > bound:
            raise WalkSupportError(f"lumped walk has {len(dist)} states, above the bound {bound}")
        if step % 2 == 0:
            out.append(dist.get(e, 0))
    return out


def return_probabilities(G, S: Sequence, N: int, bound: int = DEFAULT_SUPPORT_BOUND,
                         method: str = "auto") -> list[Fraction]:
    """[p_2(e), p_4(e), ..., p_{2N}(e)] for the uniform walk on S."""
    if N < 1:
        raise ValueError("number of steps must be at least 1")
    S = check_generators(G, S)
    if method == "auto":
        method = "radial" if _is_standard(G, S) else "sparse"
    if method == "radial":
        if not _is_standard(G, S):
            raise ValueError("the lumped walk needs the standard generators of Z^n or F_k")
        counts = _radial_counts(G, S, N, bound)
    elif method == "sparse":
        counts = _sparse_counts(G, S, N, bound)
    else:
        raise ValueError(f"unknown method {method!r}")
    m = len(S)
    return [Fraction(c, m ** (2 * n)) for n, c in enumerate(counts, start=1)]


def root_decimal(p: Fraction, k: int, digits: int = 20) -> str:
    """p^(1/k) as a decimal string."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        x = Decimal(p.numerator) / Decimal(p.denominator)
        r = (x.ln() / k).exp()
        return str(round(r, digits))


def roots_nondecreasing(probs: Sequence[Fraction]) -> bool:
    """p_{2n}^(1/2n) <= p_{2n+2}^(1/(2n+2)), compared exactly as p_{2n}^(n+1) <= p_{2n+2}^n."""
    return all(a ** (n + 1) <= b ** n for n, (a, b) in enumerate(zip(probs, probs[1:]), start=1))


def free_group_bound_holds(probs: Sequence[Fraction], k: int) -> bool:
    """p_{2n} <= ((2k-1)/k^2)^n, the Kesten bound rho(F_k) = sqrt(2k-1)/k raised to 2n."""
    r2 = Fraction(2 * k - 1, k * k)
    return all(p <= r2 ** n for n, p in enumerate(probs, start=1))


@dataclass(frozen=True)
class KestenReport:
    generators: tuple
    probabilities: tuple[Fraction, ...]
    lower_bounds: tuple[str, ...]
    verdict: str
    margin: Fraction
    monotone: bool


def kesten_evidence(G, S: Sequence, N: int, margin, bound: int = DEFAULT_SUPPORT_BOUND) -> KestenReport:
    """Lower bounds p_{2n}^(1/2n) for the spectral radius and a verdict.

    AmenableConsistent when some bound reaches 1 - margin.  NonamenableEvidence
    when the family has a known spectral radius (free groups with their
    standard generators) at most 1 - margin.  Inconclusive otherwise.
    """
    margin = Fraction(margin)
    if not 0 < margin < 1:
        raise ValueError("margin must lie strictly between 0 and 1")
    S = check_generators(G, S)
    probs = return_probabilities(G, S, N, bound)
    lows = tuple(root_decimal(p, 2 * n) for n, p in enumerate(probs, start=1))
    q = 1 - margin
    if any(p >= q ** (2 * n) for n, p in enumerate(probs, start=1)):
        verdict = AMENABLE
    elif isinstance(G, FreeGroup) and G.k >= 2 and _is_standard(G, S) and Fraction(2 * G.k - 1, G.k ** 2) <= q * q:
        verdict = NONAMENABLE
    else:
        verdict = INCONCLUSIVE
    return KestenReport(tuple(S), tuple(probs), lows, verdict, margin, roots_nondecreasing(probs))


__all__ = [
    "AMENABLE",
    "DEFAULT_SUPPORT_BOUND",
    "INCONCLUSIVE",
    "KestenReport",
    "NONAMENABLE",
    "WalkSupportError",
    "check_generators",
    "free_group_bound_holds",
    "kesten_evidence",
    "return_probabilities",
    "root_decimal",
    "roots_nondecreasing",
]
