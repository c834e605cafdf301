"""Extended dimension, closures and torsion splitting for modules over a PID.

Over a principal ideal domain R with fraction field F, the supremum of ranks
of finitely generated free submodules of M equals dim_F(F (x)_R M).  All
modules here are finitely presented: ``coker(R^m -> R^n)`` where the m
relations are the rows of an m x n matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .extdim import ExtDim
from .linalg import (
    NotAPIDError,
    RingMatrix,
    RingTag,
    fraction_field_rank,
    hermite_form,
    smith_normal_form,
)
from .linalg.rings import euclidean_domain


@dataclass(frozen=True)
class FGModulePresentation:
    ring: RingTag
    relations: RingMatrix

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise ValueError("relation matrix is over a different ring")

    @classmethod
    def free(cls, ring: RingTag, n: int) -> FGModulePresentation:
        return cls(ring, RingMatrix.zero(ring, 0, n))

    @classmethod
    def from_rows(cls, ring: RingTag, rows: Sequence[Sequence], n: int | None = None):
        return cls(ring, RingMatrix.from_rows(ring, rows, cols=n))

    @property
    def generator_count(self) -> int:
        return self.relations.cols

    def direct_sum(self, other: FGModulePresentation) -> FGModulePresentation:
        return FGModulePresentation(self.ring, self.relations.block_diag(other.relations))


@dataclass(frozen=True)
class SubmoduleSpec:
    """Submodule of ``ambient`` spanned by the images of coordinate vectors."""

    ambient: FGModulePresentation
    generators: tuple[tuple, ...] = field(default_factory=tuple)

    def __post_init__(self):
        n = self.ambient.generator_count
        ring = self.ambient.ring
        gens = []
        for g in self.generators:
            if len(g) != n:
                raise ValueError(f"generator of length {len(g)} in a module with {n} generators")
            gens.append(tuple(ring.coerce(x) for x in g))
        object.__setattr__(self, "generators", tuple(gens))

    def matrix(self) -> RingMatrix:
        return RingMatrix.from_rows(self.ambient.ring, self.generators, cols=self.ambient.generator_count)


@dataclass(frozen=True)
class DirectedChain:
    """Finite directed system of free modules R^{n_0} -> R^{n_1} -> ...

    ``maps[i]`` has shape ``(modules[i], modules[i+1])`` and acts on row
    vectors, x -> x @ maps[i].  The system is read as constant after the
    last module.
    """

    ring: RingTag
    modules: tuple[int, ...]
    maps: tuple[RingMatrix, ...]

    def __post_init__(self):
        if len(self.maps) != len(self.modules) - 1:
            raise ValueError("a chain of k modules needs k - 1 maps")
        for i, f in enumerate(self.maps):
            if f.shape != (self.modules[i], self.modules[i + 1]):
                raise ValueError(
                    f"map {i} has shape {f.shape}, expected {(self.modules[i], self.modules[i + 1])}"
                )

    def composite(self, i: int, j: int) -> RingMatrix:
        """phi_{i,j}: M_i -> M_j (identity when i == j)."""
        out = RingMatrix.identity(self.ring, self.modules[i])
        for k in range(i, j):
            out = out @ self.maps[k]
        return out


def _require_pid(ring: RingTag):
    if not ring.is_pid:
        raise NotAPIDError(f"{ring} is not a principal ideal domain; extended dimension needs a PID")


def extended_dimension(M: FGModulePresentation) -> ExtDim:
    _require_pid(M.ring)
    return Fraction(M.generator_count - fraction_field_rank(M.relations))


def torsion_projective_split(M: FGModulePresentation) -> tuple[FGModulePresentation, int]:
    """Return (TM, rank of PM) with TM presented by its non-unit invariant factors."""
    _require_pid(M.ring)
    snf = smith_normal_form(M.relations)
    dom = euclidean_domain(M.ring)
    factors = snf.invariant_factors()
    torsion = [d for d in factors if not dom.is_unit(d)]
    k = len(torsion)
    rows = [[d if i == j else M.ring.zero() for j in range(k)] for i, d in enumerate(torsion)]
    TM = FGModulePresentation(M.ring, RingMatrix.from_rows(M.ring, rows, cols=k))
    return TM, M.generator_count - len(factors)


def submodule_dimension(K: SubmoduleSpec) -> ExtDim:
    """Extended dimension of the submodule spanned by K inside its ambient module."""
    _require_pid(K.ambient.ring)
    A = K.ambient.relations
    return Fraction(fraction_field_rank(A.vstack(K.matrix())) - fraction_field_rank(A))


def submodule_presentation(K: SubmoduleSpec) -> FGModulePresentation:
    """K as a module in its own right: R^g modulo relations among its generators.

    The relations are the generator parts of the left kernel of [G; A], read
    off from the rows of U beyond the rank in a Smith normal form.
    """
    ring = K.ambient.ring
    _require_pid(ring)
    g = len(K.generators)
    B = K.matrix().vstack(K.ambient.relations)
    snf = smith_normal_form(B)
    rows = [row[:g] for row in snf.U.entries[snf.rank:]]
    return FGModulePresentation(ring, RingMatrix.from_rows(ring, rows, cols=g))


def quotient(K: SubmoduleSpec) -> FGModulePresentation:
    """Presentation of M / K."""
    return FGModulePresentation(K.ambient.ring, K.ambient.relations.vstack(K.matrix()))


def closure(K: SubmoduleSpec) -> SubmoduleSpec:
    """Preimage in M of the torsion of M / K, as a canonical generator list."""
    ring = K.ambient.ring
    _require_pid(ring)
    n = K.ambient.generator_count
    B = K.ambient.relations.vstack(K.matrix())
    snf = smith_normal_form(B)
    r = snf.rank
    if r == 0:
        return SubmoduleSpec(K.ambient, ())
    # x in the closure iff its free coordinates x @ V[:, r:] vanish
    gens = RingMatrix.from_rows(ring, snf.V_inv.entries[:r], cols=n)
    return SubmoduleSpec(K.ambient, hermite_form(gens).entries)


def same_span(K: SubmoduleSpec, L: SubmoduleSpec) -> bool:
    """Equality of the submodules of R^n generated by K and L (relations included)."""
    A = K.ambient.relations
    return hermite_form(A.vstack(K.matrix())) == hermite_form(A.vstack(L.matrix()))


def contains(L: SubmoduleSpec, K: SubmoduleSpec) -> bool:
    """True when every generator of K lies in the span of L (inside M)."""
    A = L.ambient.relations
    big = hermite_form(A.vstack(L.matrix()))
    return hermite_form(big.vstack(K.matrix())) == big


def telescope_presentation(chain: DirectedChain) -> FGModulePresentation:
    """Colimit of the chain as the cokernel of the mapping-telescope relations."""
    ring = chain.ring
    offsets = [0]
    for n in chain.modules:
        offsets.append(offsets[-1] + n)
    total = offsets[-1]
    rows = []
    for i, f in enumerate(chain.maps):
        for k in range(chain.modules[i]):
            row = [ring.zero()] * total
            row[offsets[i] + k] = ring.one()
            for j in range(chain.modules[i + 1]):
                row[offsets[i + 1] + j] = -f[k, j]
            rows.append(row)
    return FGModulePresentation(ring, RingMatrix.from_rows(ring, rows, cols=total))


def colimit_dimension(chain: DirectedChain) -> tuple[ExtDim, ExtDim]:
    """(dimension of the colimit, sup_i inf_{j >= i} dim im phi_{i,j})."""
    _require_pid(chain.ring)
    direct = extended_dimension(telescope_presentation(chain))
    L = len(chain.modules) - 1
    formula = max(
        min(fraction_field_rank(chain.composite(i, j)) for j in range(i, L + 1))
        for i in range(L + 1)
    )
    return direct, Fraction(formula)


def projection_chain(length: int, ring: RingTag) -> DirectedChain:
    """R^length -> R^(length-1) -> ... -> R^0, each map dropping the first coordinate.

    Finite truncations of a system whose colimit is trivial although every
    image of the infinite version has infinite dimension.
    """
    mods = tuple(range(length, -1, -1))
    maps = []
    for n in mods[:-1]:
        rows = [[ring.one() if (i == j + 1) else ring.zero() for j in range(n - 1)] for i in range(n)]
        maps.append(RingMatrix.from_rows(ring, rows, cols=n - 1))
    return DirectedChain(ring, mods, tuple(maps))
