"""Burnside group, L2-character maps and Hattori-Stallings ranks.

Conjugacy classes of finite subgroups are ordered by non-decreasing order
with ties broken by id.  In that order the character matrix
``A[K][H] = ch_K(Gamma/H)`` is upper triangular with ones on the diagonal,
and the global character of a Burnside element ``a`` is the column vector
``A @ a``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .extdim import INF, ExtDim, inverse_order, is_finite
from .gcw import Cell, GammaCWComplex, OrbitType
from .groups import FiniteGroup, FreeAbelianGroup, GroupError, gr_add, gr_clean, gr_matmul


class BurnsideError(ValueError):
    pass


COMPUTED = "computed"
USER = "user"


@dataclass(frozen=True)
class SubgroupClass:
    id: str
    order: int
    name: str = ""


def _natkey(s: str):
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s))


@dataclass
class FiniteSubgroupTable:
    classes: list[SubgroupClass]
    subconjugacy: frozenset[tuple[str, str]]
    weyl_order: dict[str, int | float]
    character: dict[tuple[str, str], Fraction]
    provenance: str = USER
    group: FiniteGroup | None = None
    representatives: dict[str, frozenset[int]] = field(default_factory=dict)
    members: dict[str, list[frozenset[int]]] = field(default_factory=dict)
    normalizers: dict[str, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        self.classes = sorted(self.classes, key=lambda c: (c.order, _natkey(c.id)))
        self._index = {c.id: i for i, c in enumerate(self.classes)}
        if len(self._index) != len(self.classes):
            raise BurnsideError("duplicate class id in subgroup table")

    # -- lookup ------------------------------------------------------------------

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.classes]

    def index(self, cid: str) -> int:
        try:
            return self._index[cid]
        except KeyError:
            raise BurnsideError(f"unknown subgroup class {cid!r}") from None

    def get(self, cid: str) -> SubgroupClass:
        return self.classes[self.index(cid)]

    def is_subconjugate(self, lo: str, hi: str) -> bool:
        return lo == hi or (lo, hi) in self.subconjugacy

    def class_of(self, H: Iterable[int]) -> str:
        """Class id of an explicit subgroup (computed tables only)."""
        H = frozenset(H)
        for cid, mem in self.members.items():
            if H in mem:
                return cid
        raise BurnsideError(f"subgroup {sorted(H)} is not in the table")

    def character_matrix(self) -> list[list[Fraction]]:
        return [[self.character.get((K, H), Fraction(0)) for H in self.ids] for K in self.ids]

    def check(self):
        """Raise unless the character matrix is unit upper triangular and consistent."""
        for K in self.ids:
            if self.character.get((K, K), Fraction(1)) != 1:
                raise BurnsideError(f"character({K}, {K}) must be 1")
        for (K, H), v in self.character.items():
            self.index(K)
            self.index(H)
            if v and not self.is_subconjugate(K, H):
                raise BurnsideError(f"character({K}, {H}) is nonzero but {K} is not subconjugate to {H}")
            if v < 0:
                raise BurnsideError(f"character({K}, {H}) is negative")
        for lo, hi in self.subconjugacy:
            a, b = self.get(lo), self.get(hi)
            if lo != hi and (a.order >= b.order or b.order % a.order):
                raise BurnsideError(f"{lo} subconjugate to {hi} needs |{lo}| to properly divide |{hi}|")
        for K in self.ids:
            w = self.weyl_order.get(K)
            if w is None or (is_finite(w) and (not isinstance(w, int) or w < 1)):
                raise BurnsideError(f"Weyl group order of {K} must be a positive integer or inf")


def _transitive(pairs: set[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    pairs = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    return frozenset(pairs)


def user_table(classes: Sequence[Mapping], subconjugacy: Iterable[Sequence[str]],
               character: Mapping[tuple[str, str], Fraction]) -> FiniteSubgroupTable:
    """Build and check a table from explicit data (infinite groups, hand-built examples)."""
    cls = [SubgroupClass(str(c["id"]), int(c["order"]), str(c.get("name", c["id"]))) for c in classes]
    weyl = {str(c["id"]): c.get("weyl_order", INF) for c in classes}
    pairs = {(str(a), str(b)) for a, b in subconjugacy} | {(c.id, c.id) for c in cls}
    ch = {(str(k), str(h)): Fraction(v) for (k, h), v in character.items()}
    for c in cls:
        ch.setdefault((c.id, c.id), Fraction(1))
    t = FiniteSubgroupTable(cls, _transitive(pairs), weyl, ch, provenance=USER)
    for (K, H) in t.subconjugacy:
        if (K, H) not in ch:
            raise BurnsideError(f"character value for subconjugate pair ({K}, {H}) is missing")
    t.check()
    return t


# -- computing tables from a finite group ---------------------------------------------


def all_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    """Every subgroup, as joins of cyclic subgroups."""
    cyclic = {}
    for g in G.elements():
        C = G.generated([g])
        cyclic.setdefault(C, g)
    found: dict[frozenset[int], list[int]] = {frozenset({G.identity}): []}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            gens = found[H]
            for C, g in cyclic.items():
                if C <= H:
                    continue
                J = G.generated(gens + [g])
                if J not in found:
                    found[J] = gens + [g]
                    nxt.append(J)
        frontier = nxt
    return list(found)


def _subgroup_name(G: FiniteGroup, H: frozenset[int]) -> str:
    n = len(H)
    if n == 1:
        return "1"
    if n == G.order:
        return G.name
    orders = [G.element_order(h) for h in H]
    if max(orders) == n:
        return f"Z/{n}"
    abelian = all(G.mul(a, b) == G.mul(b, a) for a in H for b in H)
    if abelian and max(orders) == 2:
        return f"(Z/2)^{n.bit_length() - 1}"
    return f"order {n}"


def subgroup_lattice(G: FiniteGroup, max_order: int = 120) -> FiniteSubgroupTable:
    """All conjugacy classes of subgroups with normalizers and character values."""
    if G.order > max_order:
        raise BurnsideError(f"group order {G.order} exceeds the configured bound {max_order}")
    subs = sorted(all_subgroups(G), key=lambda H: (len(H), sorted(H)))
    seen: set[frozenset[int]] = set()
    raw = []
    for H in subs:
        if H in seen:
            continue
        conj = sorted({G.conjugate_subgroup(g, H) for g in G.elements()}, key=sorted)
        seen.update(conj)
        raw.append((H, conj))
    classes, reps, members, norms, weyl = [], {}, {}, {}, {}
    for i, (H, conj) in enumerate(raw):
        cid = f"C{i}"
        classes.append(SubgroupClass(cid, len(H), _subgroup_name(G, H)))
        reps[cid] = H
        members[cid] = conj
        norms[cid] = G.normalizer(H)
        weyl[cid] = len(norms[cid]) // len(H)
    pairs = set()
    for K in reps:
        for H in reps:
            if any(L <= reps[H] for L in members[K]):
                pairs.add((K, H))
    table = FiniteSubgroupTable(classes, frozenset(pairs), weyl, {}, provenance=COMPUTED, group=G,
                                representatives=reps, members=members, normalizers=norms)
    for K in reps:
        for H in reps:
            v = character_value(table, K, H)
            if v:
                table.character[(K, H)] = v
    table.check()
    return table


def _formula_character(t: FiniteSubgroupTable, K: str, H: str) -> Fraction:
    """Sum over H-conjugacy classes of subgroups L <= H conjugate to K of |K| / |H cap NL|."""
    G = t.group
    Hs = t.representatives[H]
    inside = [L for L in t.members[K] if L <= Hs]
    done: set[frozenset[int]] = set()
    total = Fraction(0)
    k = t.get(K).order
    for L in inside:
        if L in done:
            continue
        done.update(G.conjugate_subgroup(h, L) for h in Hs)
        NL = G.normalizer(L)
        total += Fraction(k, len(Hs & NL))
    return total


def _fixed_point_character(t: FiniteSubgroupTable, K: str, H: str) -> Fraction:
    """|WK|^-1 |(Gamma/H)^K| by counting cosets gH with g^-1 K g inside H."""
    G = t.group
    Ks = t.representatives[K]
    Hs = t.representatives[H]
    count = sum(1 for g in G.elements() if all(G.conj(G.inv(g), k) in Hs for k in Ks))
    fixed = count // len(Hs)
    return Fraction(fixed * len(Ks), len(t.normalizers[K]))


def character_value(t: FiniteSubgroupTable, K: str, H: str) -> Fraction:
    """ch_K(Gamma/H)."""
    t.index(K)
    t.index(H)
    if t.provenance == USER:
        return t.character.get((K, H), Fraction(0))
    a = _formula_character(t, K, H)
    b = _fixed_point_character(t, K, H)
    if a != b:
        raise BurnsideError(f"character({K}, {H}): formula gives {a}, fixed-point count gives {b}")
    return a


# -- Burnside elements ------------------------------------------------------------


@dataclass(frozen=True)
class BurnsideElement:
    """Finite combination of orbit types; coefficients may be rational."""

    coefficients: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, coeffs: Mapping[str, object]) -> BurnsideElement:
        return cls(tuple(sorted(((str(k), Fraction(v)) for k, v in coeffs.items() if v), key=lambda kv: _natkey(kv[0]))))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coefficients)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for _, v in self.coefficients)

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        d = self.as_dict()
        for k, v in other.coefficients:
            d[k] = d.get(k, 0) + v
        return BurnsideElement.of(d)

    def vector(self, t: FiniteSubgroupTable) -> list[Fraction]:
        for k, _ in self.coefficients:
            t.index(k)
        d = self.as_dict()
        return [d.get(c, Fraction(0)) for c in t.ids]


def _cell_class(X: GammaCWComplex, t: FiniteSubgroupTable, c: Cell) -> str:
    if c.orbit.class_id is not None:
        t.index(c.orbit.class_id)
        return c.orbit.class_id
    if t.provenance == COMPUTED and c.orbit.subgroup is not None:
        return t.class_of(c.orbit.subgroup)
    if c.orbit.order == 1:
        trivial = [k.id for k in t.classes if k.order == 1]
        if trivial:
            return trivial[0]
    raise BurnsideError(f"cell {c.id!r}: stabilizer class is not in the table")


def equivariant_euler(X: GammaCWComplex, t: FiniteSubgroupTable) -> BurnsideElement:
    """Sum over cells of (-1)^dim [Gamma / Gamma_c]."""
    acc: dict[str, int] = {}
    for c in X.cells:
        k = _cell_class(X, t, c)
        acc[k] = acc.get(k, 0) + (-1) ** c.dim
    return BurnsideElement.of(acc)


def l2_euler_of(t: FiniteSubgroupTable, a: BurnsideElement) -> Fraction:
    """chi^(2) of an element of A(Gamma) (tensor Q): sum of a_H / |H|."""
    return sum((v * inverse_order(t.get(k).order) for k, v in a.coefficients), Fraction(0))


def global_character(t: FiniteSubgroupTable, a: BurnsideElement | Mapping) -> list[Fraction]:
    if not isinstance(a, BurnsideElement):
        a = BurnsideElement.of(a)
    x = a.vector(t)
    A = t.character_matrix()
    return [sum((A[i][j] * x[j] for j in range(len(x)) if A[i][j]), Fraction(0)) for i in range(len(x))]


@dataclass(frozen=True)
class IntegralityResult:
    passed: bool
    preimage: tuple[Fraction, ...]
    witnesses: tuple[tuple[str, Fraction], ...]


def integrality_conditions(t: FiniteSubgroupTable, eta: Sequence) -> IntegralityResult:
    """Solve A xi = eta by back-substitution; pass iff xi is integral."""
    A = t.character_matrix()
    n = len(A)
    if len(eta) != n:
        raise BurnsideError(f"character vector has {len(eta)} entries, table has {n} classes")
    eta = [Fraction(e) for e in eta]
    xi = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = eta[i] - sum((A[i][j] * xi[j] for j in range(i + 1, n) if A[i][j]), Fraction(0))
        xi[i] = s / A[i][i]
    bad = tuple((t.ids[i], x) for i, x in enumerate(xi) if x.denominator != 1)
    return IntegralityResult(not bad, tuple(xi), bad)


def inverse_character_matrix(t: FiniteSubgroupTable) -> list[list[Fraction]]:
    n = len(t.classes)
    cols = [integrality_conditions(t, [Fraction(int(i == j)) for i in range(n)]).preimage for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


_SUB = str.maketrans("0123456789i", "₀₁₂₃₄₅₆₇₈₉ᵢ")


def _coef_text(c: Fraction, sym: str | None = None) -> str:
    a = abs(c)
    if sym is not None:
        return f"({sym})"
    if a == 1:
        return ""
    return f"({a})" if a.denominator != 1 else str(a)


def condition_texts(t: FiniteSubgroupTable, p_symbol: tuple[int, str] | None = None) -> list[str]:
    """Integrality conditions sum_j (A^-1)_{ij} eta_j in Z, one per class.

    Trailing terms sharing one coefficient are written with a summation sign.
    With ``p_symbol = (p, "p")`` a coefficient of magnitude 1/p prints as (1/p),
    and the summation form is kept even for a single term, so the text reads
    the same for every member of a parametrised family.
    """
    Ainv = inverse_character_matrix(t)
    n = len(Ainv)
    out = []
    for i in range(n):
        row = Ainv[i]
        lead = f"η{str(i).translate(_SUB)}"
        rest = [j for j in range(i + 1, n) if row[j]]
        text = lead
        if rest:
            coefs = {row[j] for j in rest}
            if len(coefs) == 1 and (len(rest) > 1 or p_symbol) and rest == list(range(rest[0], n)):
                c = coefs.pop()
                sym = p_symbol[1] if p_symbol and abs(c) == Fraction(1, p_symbol[0]) else None
                sym = f"1/{sym}" if sym else None
                text += f" {'−' if c < 0 else '+'} {_coef_text(c, sym)}Ση{'i'.translate(_SUB)}"
            else:
                for j in rest:
                    c = row[j]
                    text += f" {'−' if c < 0 else '+'} {_coef_text(c)}η{str(j).translate(_SUB)}"
        out.append(text + " ∈ Z")
    return out


# -- Example 9 ------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class Example9:
    table: FiniteSubgroupTable
    euler: BurnsideElement
    character: tuple[Fraction, ...]
    l2_euler: Fraction
    conditions: tuple[str, ...]


def example9_table(n: int, p: int, r: int) -> Example9:
    """Model of E(Gamma, FIN) for Z^n semidirect Z/p acting without nonzero fixed points.

    ``r`` is the number of conjugacy classes of subgroups of order p, taken
    as input.  The K-fixed sets are contractible, so the global character of
    the equivariant Euler characteristic is 0 at the trivial class (an
    infinite amenable Weyl group) and 1 at each H_i (trivial Weyl group); the
    Burnside coefficients follow by back-substitution.
    """
    if n < 1:
        raise BurnsideError("n must be at least 1")
    if not _is_prime(p):
        raise BurnsideError(f"p = {p} is not prime")
    if r < 0:
        raise BurnsideError("r must be nonnegative")
    classes = [{"id": "H0", "order": 1, "weyl_order": INF}] + [
        {"id": f"H{i}", "order": p, "weyl_order": 1} for i in range(1, r + 1)
    ]
    ch = {("H0", f"H{j}"): Fraction(1, p) for j in range(1, r + 1)}
    sub = [("H0", f"H{j}") for j in range(1, r + 1)]
    t = user_table(classes, sub, ch)
    eta = [Fraction(0)] + [Fraction(1)] * r
    xi = integrality_conditions(t, eta).preimage
    euler = BurnsideElement.of(dict(zip(t.ids, xi)))
    conds = condition_texts(t, p_symbol=(p, "p"))
    if r:
        conds = [conds[0], "ηᵢ ∈ Z (i = 1, …, r)"]
    return Example9(t, euler, tuple(global_character(t, euler)), l2_euler_of(t, euler), tuple(conds))


# -- fixed points ---------------------------------------------------------------------


def weyl_group(G: FiniteGroup, K: frozenset[int]) -> tuple[FiniteGroup, dict[int, int]]:
    """W K = N K / K with a map from NK to indices of the quotient."""
    N = sorted(G.normalizer(K))
    cosets: list[frozenset[int]] = []
    proj: dict[int, int] = {}
    for g in N:
        if g in proj:
            continue
        c = frozenset(G.mul(g, k) for k in K)
        for x in c:
            proj[x] = len(cosets)
        cosets.append(c)
    reps = [min(c) for c in cosets]
    table = [[proj[G.mul(a, b)] for b in reps] for a in reps]
    names = [G.names[a] for a in reps]
    W = FiniteGroup(table, names, name=f"W({len(K)}) in {G.name}")
    return W, proj


def fixed_point_complex(X: GammaCWComplex, K: Iterable[int] | str, t: FiniteSubgroupTable | None = None) -> GammaCWComplex:
    """X^K as a complex over the Weyl group W K.

    A cell c contributes the NK-orbits of K-fixed cosets gGamma_c, each with
    stabilizer (g Gamma_c g^-1 cap NK)/K.  Boundaries keep the terms whose
    target coset is K-fixed.
    """
    G = X.group
    if not isinstance(G, FiniteGroup):
        raise BurnsideError("fixed-point complexes need a finite group")
    if isinstance(K, str):
        if t is None or t.group != G:
            raise BurnsideError("a class id needs the group's computed subgroup table")
        K = t.representatives[K]
    K = frozenset(K)
    if not G.is_subgroup(K):
        raise BurnsideError("K is not a subgroup")
    W, proj = weyl_group(G, K)
    NK = sorted(G.normalizer(K))
    ginv = G.inv

    def fixed(g, H):
        return all(G.conj(ginv(g), k) in H for k in K)

    cells_by_id = X.by_id
    where: dict[tuple[str, frozenset[int]], tuple[str, int]] = {}
    new_cells: list[tuple[str, int, OrbitType, str, int]] = []
    for c in X.cells:
        H = c.orbit.subgroup if c.orbit.subgroup is not None else frozenset({G.identity})
        done: set[frozenset[int]] = set()
        k = 0
        for gH in G.left_cosets(H):
            g = min(gH)
            if gH in done or not fixed(g, H):
                continue
            orbit = set()
            for n in NK:
                m = G.mul(n, g)
                coset = frozenset(G.mul(m, h) for h in H)
                if coset not in orbit:
                    orbit.add(coset)
                    where[(c.id, coset)] = (f"{c.id}#{k}", n)
            done |= orbit
            stab = frozenset(proj[n] for n in NK if G.mul(ginv(g), G.mul(n, g)) in H)
            new_cells.append((f"{c.id}#{k}", c.dim, OrbitType(len(stab), stab), c.id, g))
            k += 1
    out = []
    for cid, dim, orbit, src, g in new_cells:
        bd: dict[str, dict] = {}
        for d_id, x in cells_by_id[src].boundary:
            Hd = cells_by_id[d_id].orbit.subgroup or frozenset({G.identity})
            for gamma, coef in x:
                m = G.mul(g, gamma)
                coset = frozenset(G.mul(m, h) for h in Hd)
                hit = where.get((d_id, coset))
                if hit is None:
                    continue
                target, n = hit
                # the target cell is n . rep, so gamma acts as n K in W K
                bd[target] = gr_add(bd.get(target, {}), {proj[n]: coef})
        out.append(Cell.make(cid, dim, orbit, bd.items()))
    return GammaCWComplex(W, tuple(out), connected=False)


# -- Hattori-Stallings rank -------------------------------------------------------------


@dataclass(frozen=True)
class ClassFunction:
    values: tuple[tuple[str, Fraction], ...]

    @classmethod
    def of(cls, d: Mapping[str, Fraction]) -> ClassFunction:
        return cls(tuple(sorted(((k, Fraction(v)) for k, v in d.items() if v), key=lambda kv: _natkey(kv[0]))))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.values)

    def __getitem__(self, k: str) -> Fraction:
        return self.as_dict().get(k, Fraction(0))

    def __add__(self, other: ClassFunction) -> ClassFunction:
        d = self.as_dict()
        for k, v in other.values:
            d[k] = d.get(k, 0) + v
        return ClassFunction.of(d)


def _class_label(G, g) -> str:
    if isinstance(G, FiniteGroup):
        cls = next(c for c in G.conjugacy_classes() if g in c)
        return G.names[cls[0]]
    return str(tuple(g))


def hattori_stallings(A: Sequence[Sequence[Mapping]], G: FiniteGroup | FreeAbelianGroup) -> ClassFunction:
    """HS rank of the projective module given by an idempotent group-ring matrix."""
    if not isinstance(G, (FiniteGroup, FreeAbelianGroup)):
        raise GroupError("Hattori-Stallings ranks are implemented for finite and free abelian groups")
    A = [[gr_clean({G.normal_form(g): c for g, c in x.items()}) for x in row] for row in A]
    n = len(A)
    if any(len(row) != n for row in A):
        raise BurnsideError("matrix must be square")
    if gr_matmul(G, A, A) != A:
        raise BurnsideError("matrix is not idempotent")
    out: dict[str, Fraction] = {}
    labels: dict = {}
    for i in range(n):
        for g, c in A[i][i].items():
            if g not in labels:
                labels[g] = _class_label(G, g)
            out[labels[g]] = out.get(labels[g], 0) + c
    return ClassFunction.of(out)


__all__ = [
    "BurnsideElement",
    "BurnsideError",
    "ClassFunction",
    "Example9",
    "FiniteSubgroupTable",
    "IntegralityResult",
    "SubgroupClass",
    "character_value",
    "condition_texts",
    "equivariant_euler",
    "example9_table",
    "fixed_point_complex",
    "global_character",
    "hattori_stallings",
    "integrality_conditions",
    "l2_euler_of",
    "subgroup_lattice",
    "user_table",
    "weyl_group",
]
