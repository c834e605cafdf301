"""L2-Betti numbers for finite groups, free abelian groups and free groups.

Each engine reduces the von Neumann dimension to exact linear algebra:

* finite Gamma: dim_N(Gamma) = dim_Q / |Gamma|, so b_p is the rank of the
  rational homology of the expanded complex divided by |Gamma|;
* Gamma = Z^n: b_p is the rank over the fraction field of Q[Z^n] of the
  homology of the Laurent chain complex;
* Gamma = F_k on graphs: b_0 = 0 and b_1 = -chi^(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .extdim import ExtDim, inverse_order, is_finite
from .gcw import (
    Cell,
    GammaCWComplex,
    expand_to_plain_complex,
    l2_euler_characteristic,
    laurent_chain_complex,
    require_valid,
)
from .groups import FiniteGroup, FreeAbelianGroup, FreeGroup
from .linalg import chain_homology_ranks, fraction_field_rank
from .pid import FGModulePresentation

FINITE = "FiniteGroup"
FREE_ABELIAN = "FreeAbelian"
FREE_GROUP = "FreeGroup1Dim"
DIM_ZERO = "DimZeroOnly"


class EngineError(ValueError):
    pass


@dataclass(frozen=True)
class BettiReport:
    group: dict
    values: tuple[ExtDim, ...]
    engine: str
    d: int

    @property
    def euler(self) -> Fraction:
        return sum(((-1) ** p * v for p, v in enumerate(self.values)), Fraction(0))


def subgroup_order_lcm(G) -> int:
    """Least common multiple of the orders of finite subgroups."""
    return G.order if isinstance(G, FiniteGroup) else 1


def betti_finite(X: GammaCWComplex) -> BettiReport:
    G = X.group
    if not isinstance(G, FiniteGroup):
        raise EngineError("the finite-group engine needs a finite group")
    require_valid(X)
    ranks = chain_homology_ranks(expand_to_plain_complex(X)) if X.cells else []
    return BettiReport(G.summary(), tuple(Fraction(r, G.order) for r in ranks), FINITE, G.order)


def betti_free_abelian(X: GammaCWComplex) -> BettiReport:
    G = X.group
    if not isinstance(G, FreeAbelianGroup):
        raise EngineError("the free abelian engine needs Z^n")
    bad = [c.id for c in X.cells if not c.orbit.is_trivial]
    if bad:
        raise EngineError(f"the Z^n engine needs a free action; cells with nontrivial stabilizer: {bad}")
    require_valid(X)
    ranks = chain_homology_ranks(laurent_chain_complex(X)) if X.cells else []
    return BettiReport(G.summary(), tuple(Fraction(r) for r in ranks), FREE_ABELIAN, 1)


def betti_free_group_1dim(X: GammaCWComplex) -> BettiReport:
    G = X.group
    if not isinstance(G, FreeGroup):
        raise EngineError("the free group engine needs F_k")
    if G.k == 1:
        raise EngineError("F_1 is Z; use the free abelian engine")
    if X.dimension > 1:
        raise EngineError(f"the free group engine handles graphs only; complex has dimension {X.dimension}")
    if not X.connected:
        raise EngineError("the free group engine needs a connected complex")
    bad = [c.id for c in X.cells if not c.orbit.is_trivial]
    if bad:
        raise EngineError(f"the free group engine needs a free action; cells with nontrivial stabilizer: {bad}")
    require_valid(X)
    chi, _ = l2_euler_characteristic(X)
    if chi > 0:
        raise EngineError("a connected free F_k-graph cannot have positive Euler characteristic")
    return BettiReport(G.summary(), (Fraction(0), -chi), FREE_GROUP, 1)


def free_group_rank_one_as_z(X: GammaCWComplex) -> GammaCWComplex:
    """Rewrite a complex over F_1 as one over Z (words become exponent sums)."""
    Z = FreeAbelianGroup(1)
    cells = []
    for c in X.cells:
        bd = []
        for t, x in c.boundary:
            y: dict = {}
            for w, coef in x:
                g = (sum(1 if s > 0 else -1 for s in w),)
                y[g] = y.get(g, 0) + coef
            bd.append((t, y))
        cells.append(Cell.make(c.id, c.dim, c.orbit, bd))
    return GammaCWComplex(Z, tuple(cells), X.connected)


def betti(X: GammaCWComplex) -> BettiReport:
    """Dispatch to the engine for the complex's group family."""
    G = X.group
    if isinstance(G, FiniteGroup):
        return betti_finite(X)
    if isinstance(G, FreeAbelianGroup):
        return betti_free_abelian(X)
    if isinstance(G, FreeGroup):
        if G.k == 1:
            r = betti_free_abelian(free_group_rank_one_as_z(X))
            return BettiReport(G.summary(), r.values, r.engine, 1)
        return betti_free_group_1dim(X)
    raise EngineError(f"no engine for {G!r}")


def dimension_of_induced_module(M: FGModulePresentation) -> ExtDim:
    """Generic rank of a finitely presented module over a Laurent ring."""
    return Fraction(M.generator_count - fraction_field_rank(M.relations))


def betti_zeroth(G, connected: bool) -> ExtDim:
    if not connected:
        raise EngineError("b_0 shortcut needs a connected complex")
    return inverse_order(G.order)


def betti_zeroth_report(G, connected: bool) -> BettiReport:
    return BettiReport(G.summary(), (betti_zeroth(G, connected),), DIM_ZERO, subgroup_order_lcm(G))


def integrality_verdict(report: BettiReport) -> tuple[bool, list[int]]:
    """(all finite d * b_p are integers, degrees where they are not)."""
    bad = [p for p, v in enumerate(report.values) if is_finite(v) and (report.d * Fraction(v)).denominator != 1]
    return not bad, bad


__all__ = [
    "BettiReport",
    "DIM_ZERO",
    "EngineError",
    "FINITE",
    "FREE_ABELIAN",
    "FREE_GROUP",
    "betti",
    "betti_finite",
    "betti_free_abelian",
    "betti_free_group_1dim",
    "betti_zeroth",
    "betti_zeroth_report",
    "dimension_of_induced_module",
    "integrality_verdict",
    "subgroup_order_lcm",
]
