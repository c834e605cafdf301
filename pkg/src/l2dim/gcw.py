"""Equivariant CW-complexes given by cells, orbit types and group-ring boundaries.

A cell ``c`` of dimension p stands for the orbit Gamma/Gamma_c x D^p.  Its
boundary is a list of pairs (target cell, group-ring element x) meaning
d(e_c) = sum x * e_target; translates are handled by left multiplication,
d(g e_c) = sum (g x) e_target.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .extdim import INF, inverse_order, is_finite
from .groups import FiniteGroup, FreeAbelianGroup, FreeGroup, GroupSpec, gr_add, gr_clean, gr_mul
from .linalg import RATIONALS, FreeChainComplex, LaurentPoly, RingMatrix, laurent_multi
from .linalg.rings import LAURENT_UNI


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitType:
    """Stabilizer data of an equivariant cell.

    ``subgroup`` is the explicit stabilizer for finite groups.  For infinite
    groups only the order (possibly ``inf``) and an optional class label from
    a user-supplied subgroup table are recorded.
    """

    order: int | float = 1
    subgroup: frozenset[int] | None = None
    class_id: str | None = None

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


TRIVIAL = OrbitType()


def _freeze(x: Mapping) -> tuple:
    return tuple(sorted(gr_clean(x).items()))


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    orbit: OrbitType = TRIVIAL
    boundary: tuple[tuple[str, tuple], ...] = ()

    @classmethod
    def make(cls, id, dim, orbit: OrbitType = TRIVIAL, boundary: Iterable[tuple[str, Mapping]] = ()):
        merged: dict[str, dict] = {}
        for target, x in boundary:
            merged[target] = gr_add(merged.get(target, {}), x)
        return cls(str(id), int(dim), orbit,
                   tuple((t, _freeze(x)) for t, x in merged.items() if x))

    def boundary_map(self) -> dict[str, dict]:
        return {t: dict(x) for t, x in self.boundary}


@dataclass(frozen=True)
class GammaCWComplex:
    group: GroupSpec
    cells: tuple[Cell, ...]
    connected: bool = False

    def __post_init__(self):
        cells = tuple(self.cells)
        if isinstance(self.group, FiniteGroup):
            # trivial stabilizers are stored explicitly so equal complexes compare equal
            one = frozenset({self.group.identity})
            cells = tuple(
                Cell(c.id, c.dim, OrbitType(1, one, c.orbit.class_id), c.boundary)
                if c.orbit.subgroup is None and c.orbit.order == 1 else c
                for c in cells
            )
        object.__setattr__(self, "cells", cells)

    @property
    def by_id(self) -> dict[str, Cell]:
        return {c.id: c for c in self.cells}

    def cells_of_dim(self, p: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == p]

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def is_free(self) -> bool:
        return all(c.orbit.is_trivial for c in self.cells)

    def disjoint_union(self, other: GammaCWComplex) -> GammaCWComplex:
        if self.group != other.group:
            raise ComplexError("disjoint union needs a common group")
        return GammaCWComplex(
            self.group,
            tuple(_rename(c, "a:") for c in self.cells) + tuple(_rename(c, "b:") for c in other.cells),
            connected=False,
        )


def _rename(c: Cell, prefix: str) -> Cell:
    return Cell(prefix + c.id, c.dim, c.orbit, tuple((prefix + t, x) for t, x in c.boundary))


def finite_orbit(G: FiniteGroup, H: Iterable[int]) -> OrbitType:
    H = frozenset(H)
    return OrbitType(order=len(H), subgroup=H)


# -- validation ----------------------------------------------------------------


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.errors

    def __bool__(self):
        return self.valid


def validate(X: GammaCWComplex) -> ValidationReport:
    """Check shapes, stabilizers, boundary targets, equivariance and d o d = 0."""
    rep = ValidationReport()
    G = X.group
    ids = [c.id for c in X.cells]
    seen = set()
    for i in ids:
        if i in seen:
            rep.errors.append(f"duplicate cell id {i!r}")
        seen.add(i)
    cells = X.by_id
    for c in X.cells:
        where = f"cell {c.id!r}"
        if c.dim < 0:
            rep.errors.append(f"{where}: negative dimension")
        o = c.orbit
        if is_finite(o.order) and (not isinstance(o.order, int) or o.order < 1):
            rep.errors.append(f"{where}: stabilizer order {o.order} is not a positive integer")
            continue
        if isinstance(G, FiniteGroup):
            H = o.subgroup if o.subgroup is not None else (frozenset({G.identity}) if o.order == 1 else None)
            if H is None:
                rep.errors.append(f"{where}: finite groups need an explicit stabilizer subgroup")
            elif not G.is_subgroup(H):
                rep.errors.append(f"{where}: stabilizer {sorted(H)} is not a subgroup")
            elif len(H) != o.order:
                rep.errors.append(f"{where}: stabilizer order {o.order} does not match the subgroup")
            elif G.order % len(H):
                rep.errors.append(f"{where}: stabilizer order does not divide |G|")
        elif c.boundary and not o.is_trivial:
            rep.errors.append(f"{where}: boundary data needs a trivial stabilizer over an infinite group")
        for t, x in c.boundary:
            tc = cells.get(t)
            if tc is None:
                rep.errors.append(f"{where}: boundary target {t!r} does not exist")
                continue
            if tc.dim != c.dim - 1:
                rep.errors.append(f"{where}: boundary target {t!r} has dimension {tc.dim}, expected {c.dim - 1}")
            if not isinstance(G, FiniteGroup) and not tc.orbit.is_trivial:
                rep.errors.append(f"{where}: boundary target {t!r} has a nontrivial stabilizer")
            for g, _ in x:
                try:
                    if G.normal_form(g) != g:
                        raise ValueError
                except (ValueError, TypeError):
                    rep.errors.append(f"{where}: {g!r} is not a group element in normal form")
    if rep.errors:
        return rep

    if isinstance(G, FiniteGroup):
        exp = _Expansion(X)
        for c in X.cells:
            if c.orbit.order > 1 and c.boundary:
                base = exp.boundary_vector(c, G.identity)
                for h in c.orbit.subgroup:
                    if exp.boundary_vector(c, h) != base:
                        rep.errors.append(f"cell {c.id!r}: boundary is not invariant under its stabilizer")
                        break
        if rep.errors:
            return rep
        C = exp.chain_complex()
        for p in C.boundary_defects():
            rep.errors.append(f"boundary of a {p + 1}-cell does not vanish under d_{p}: "
                              f"{_offenders(X, p + 1)}")
        if not rep.errors and X.connected:
            from .linalg import chain_homology_ranks

            if C.ranks and chain_homology_ranks(C)[0] != 1:
                rep.errors.append("declared connected, but the underlying space is disconnected")
            if not C.ranks or C.ranks[0] == 0:
                rep.errors.append("declared connected, but the complex is empty")
    else:
        for c in X.cells:
            comp = _composite_boundary(X, c)
            if comp:
                shown = "; ".join(f"{t}: {format_element(x)}" for t, x in comp.items())
                rep.errors.append(f"cell {c.id!r}: composite boundary d(d(e)) is not zero ({shown})")
    return rep


def _offenders(X: GammaCWComplex, p: int) -> str:
    exp = _Expansion(X)
    bad = []
    for c in X.cells_of_dim(p):
        for g in exp.coset_reps[c.id]:
            v = exp.boundary_vector(c, g)
            total: dict = {}
            for (d_id, k), coef in v.items():
                d = X.by_id[d_id]
                for key, c2 in exp.boundary_vector(d, exp.coset_reps[d_id][k]).items():
                    total[key] = total.get(key, 0) + coef * c2
            if any(total.values()):
                bad.append(c.id)
                break
    return ", ".join(repr(b) for b in bad)


def _composite_boundary(X: GammaCWComplex, c: Cell) -> dict:
    """d(d(e_c)) over the group ring, as {target id: element}."""
    G = X.group
    cells = X.by_id
    out: dict[str, dict] = {}
    for d_id, x in c.boundary_map().items():
        for e_id, y in cells[d_id].boundary_map().items():
            out[e_id] = gr_add(out.get(e_id, {}), gr_mul(G, x, y))
    return {k: v for k, v in out.items() if v}


def format_element(x: Mapping) -> str:
    """Readable group-ring element, e.g. ``1*(1,) - 1*(0,)``."""
    parts = []
    for g, c in sorted(x.items()):
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {abs(c)}*{g}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


def require_valid(X: GammaCWComplex):
    rep = validate(X)
    if not rep.valid:
        raise ComplexError("; ".join(rep.errors))


# -- Euler characteristics ---------------------------------------------------------


def l2_euler_characteristic(X: GammaCWComplex) -> tuple[Fraction, Fraction]:
    """(chi^(2)(X), m(X)) from cell counts: sums of (-1)^dim |Gamma_c|^-1 and |Gamma_c|^-1."""
    chi = Fraction(0)
    m = Fraction(0)
    for c in X.cells:
        if c.orbit.order is None:
            raise ComplexError(f"cell {c.id!r} has no recorded stabilizer order")
        w = inverse_order(c.orbit.order)
        chi += w if c.dim % 2 == 0 else -w
        m += w
    return chi, m


# -- finite-group expansion ------------------------------------------------------------


class _Expansion:
    def __init__(self, X: GammaCWComplex):
        G = X.group
        self.X = X
        self.G = G
        self.coset_reps: dict[str, list[int]] = {}
        self.coset_index: dict[str, list[int]] = {}
        for c in X.cells:
            H = c.orbit.subgroup if c.orbit.subgroup is not None else frozenset({G.identity})
            cosets = G.left_cosets(H)
            self.coset_reps[c.id] = [min(cs) for cs in cosets]
            idx = [0] * G.order
            for k, cs in enumerate(cosets):
                for g in cs:
                    idx[g] = k
            self.coset_index[c.id] = idx

    def boundary_vector(self, c: Cell, g: int) -> dict[tuple[str, int], Fraction]:
        """d(g e_c) in the basis of plain cells (cell id, coset number)."""
        out: dict[tuple[str, int], Fraction] = {}
        for d_id, x in c.boundary:
            idx = self.coset_index[d_id]
            for gamma, coef in x:
                key = (d_id, idx[self.G.mul(g, gamma)])
                out[key] = out.get(key, 0) + coef
        return {k: v for k, v in out.items() if v}

    def chain_complex(self) -> FreeChainComplex:
        X = self.X
        top = X.dimension
        basis = []
        for p in range(top + 1):
            basis.append([(c.id, k) for c in X.cells_of_dim(p) for k in range(len(self.coset_reps[c.id]))])
        pos = [{b: i for i, b in enumerate(B)} for B in basis]
        diffs = []
        cells = X.by_id
        for p in range(1, top + 1):
            rows = [[Fraction(0)] * len(basis[p]) for _ in basis[p - 1]]
            for j, (cid, k) in enumerate(basis[p]):
                v = self.boundary_vector(cells[cid], self.coset_reps[cid][k])
                for key, coef in v.items():
                    rows[pos[p - 1][key]][j] += coef
            diffs.append(RingMatrix(RATIONALS, len(basis[p - 1]), len(basis[p]),
                                    tuple(tuple(r) for r in rows)))
        return FreeChainComplex(RATIONALS, tuple(len(B) for B in basis), tuple(diffs))


def expand_to_plain_complex(X: GammaCWComplex) -> FreeChainComplex:
    """Underlying rational cellular chain complex of a complex over a finite group.

    Each equivariant cell c contributes [Gamma : Gamma_c] ordinary cells, one
    per left coset, ordered by smallest coset element.
    """
    if not isinstance(X.group, FiniteGroup):
        raise ComplexError("expansion to a plain complex needs a finite group")
    for c in X.cells:
        if c.orbit.subgroup is not None and not X.group.is_subgroup(c.orbit.subgroup):
            raise ComplexError(f"cell {c.id!r}: stabilizer is not a subgroup")
    return _Expansion(X).chain_complex()


# -- assembling over Laurent rings --------------------------------------------------


def laurent_chain_complex(X: GammaCWComplex) -> FreeChainComplex:
    """Chain complex of free Q[Z^n]-modules for a free complex over Z^n."""
    G = X.group
    if not isinstance(G, FreeAbelianGroup):
        raise ComplexError("Laurent chain complexes need a free abelian group")
    for c in X.cells:
        if not c.orbit.is_trivial:
            raise ComplexError(f"cell {c.id!r} has a nontrivial stabilizer; the Z^n engine needs a free action")
    ring = LAURENT_UNI if G.n == 1 else laurent_multi(G.n)
    top = X.dimension
    basis = [[c.id for c in X.cells_of_dim(p)] for p in range(top + 1)]
    pos = [{b: i for i, b in enumerate(B)} for B in basis]
    diffs = []
    cells = X.by_id
    for p in range(1, top + 1):
        rows = [[ring.zero()] * len(basis[p]) for _ in basis[p - 1]]
        for j, cid in enumerate(basis[p]):
            for t, x in cells[cid].boundary:
                rows[pos[p - 1][t]][j] = rows[pos[p - 1][t]][j] + LaurentPoly(G.n, dict(x))
        diffs.append(RingMatrix(ring, len(basis[p - 1]), len(basis[p]), tuple(tuple(r) for r in rows)))
    return FreeChainComplex(ring, tuple(len(B) for B in basis), tuple(diffs))


# -- induction -----------------------------------------------------------------


def induce_complex(X: GammaCWComplex, G: FiniteGroup, embedding: Sequence[int]) -> GammaCWComplex:
    """G x_D X for a complex X over D and an injective homomorphism D -> G."""
    from .groups import is_injective_homomorphism

    D = X.group
    if not isinstance(D, FiniteGroup):
        raise ComplexError("induction is implemented for finite groups")
    emb = list(embedding)
    if not is_injective_homomorphism(D, G, emb):
        raise ComplexError("embedding is not an injective homomorphism")
    cells = []
    for c in X.cells:
        H = c.orbit.subgroup if c.orbit.subgroup is not None else frozenset({D.identity})
        orbit = OrbitType(order=len(H), subgroup=frozenset(emb[h] for h in H), class_id=None)
        bd = [(t, {emb[g]: coef for g, coef in x}) for t, x in c.boundary]
        cells.append(Cell.make(c.id, c.dim, orbit, bd))
    return GammaCWComplex(G, tuple(cells), connected=X.connected and G.order == D.order)


def point(G: GroupSpec, stabilizer: Iterable[int] | None = None, order=None) -> GammaCWComplex:
    """A single orbit Gamma/H of 0-cells."""
    if isinstance(G, FiniteGroup):
        H = frozenset(stabilizer) if stabilizer is not None else frozenset(G.elements())
        orbit = OrbitType(order=len(H), subgroup=H)
        return GammaCWComplex(G, (Cell.make("pt", 0, orbit),), connected=len(H) == G.order)
    orbit = OrbitType(order=INF if order is None else order)
    return GammaCWComplex(G, (Cell.make("pt", 0, orbit),), connected=orbit.order == INF)


__all__ = [
    "Cell",
    "ComplexError",
    "FreeGroup",
    "GammaCWComplex",
    "OrbitType",
    "TRIVIAL",
    "ValidationReport",
    "expand_to_plain_complex",
    "finite_orbit",
    "induce_complex",
    "l2_euler_characteristic",
    "laurent_chain_complex",
    "point",
    "require_valid",
    "validate",
]
