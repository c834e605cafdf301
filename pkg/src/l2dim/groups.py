"""The three executable group families and their group rings.

Every group exposes the same small oracle interface, which is all the
random-walk code needs:

* ``identity``, ``mul(a, b)``, ``inv(a)`` on hashable normal forms;
* ``order`` (an ``int`` or ``math.inf``);
* ``standard_generators()``, a symmetric generating set.

Group-ring elements are plain ``dict`` objects mapping normal forms to
:class:`~fractions.Fraction` coefficients.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

GroupRingElement = dict


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table on indices 0..n-1."""

    kind = "finite"

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                 name: str | None = None, generators: Sequence[int] | None = None,
                 check: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        self.name = name or f"finite group of order {n}"
        if check:
            self._validate()
        self.identity = next(e for e in range(n) if self.table[e] == tuple(range(n)))
        self._inv = tuple(next(b for b in range(n) if self.table[a][b] == self.identity) for a in range(n))
        self._gens = tuple(generators) if generators is not None else None

    def _validate(self):
        n = len(self.table)
        if n == 0:
            raise GroupError("empty multiplication table")
        if len(self.names) != n:
            raise GroupError("element name list does not match the table size")
        T = np.array(self.table, dtype=np.int64)
        if T.shape != (n, n):
            raise GroupError("multiplication table must be square")
        if T.min() < 0 or T.max() >= n:
            raise GroupError("multiplication table entries out of range")
        ids = [e for e in range(n) if (T[e] == np.arange(n)).all() and (T[:, e] == np.arange(n)).all()]
        if not ids:
            raise GroupError("multiplication table has no identity element")
        e = ids[0]
        for a in range(n):
            if not (T[a] == e).any():
                raise GroupError(f"element {a} has no inverse")
        # (ab)c == a(bc) for all triples
        if not (T[T, :] == T[:, T]).all():
            raise GroupError("multiplication table is not associative")

    # -- oracle interface -------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def is_finite(self) -> bool:
        return True

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def normal_form(self, a) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise GroupError(f"element index {a} out of range")
        return a

    def standard_generators(self) -> list[int]:
        gens = self._gens if self._gens is not None else self.minimal_generators()
        out = []
        for g in gens:
            for x in (g, self.inv(g)):
                if x != self.identity and x not in out:
                    out.append(x)
        return out

    # -- structure ------------------------------------------------------------

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self._inv[g]]

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = set(H)
        if self.identity not in H:
            return False
        return all(self.table[a][self._inv[b]] in H for a in H for b in H)

    def conjugate_subgroup(self, g: int, H: Iterable[int]) -> frozenset[int]:
        return frozenset(self.conj(g, h) for h in H)

    def normalizer(self, H: frozenset[int]) -> frozenset[int]:
        return frozenset(g for g in self.elements() if self.conjugate_subgroup(g, H) == H)

    def left_cosets(self, H: frozenset[int]) -> list[frozenset[int]]:
        """Cosets gH, ordered by their smallest element."""
        seen: set[int] = set()
        out = []
        for g in self.elements():
            if g in seen:
                continue
            c = frozenset(self.table[g][h] for h in H)
            seen |= c
            out.append(c)
        return out

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for a in self.elements():
            if a in seen:
                continue
            cls = tuple(sorted({self.conj(g, a) for g in self.elements()}))
            seen.update(cls)
            out.append(cls)
        return out

    def minimal_generators(self) -> list[int]:
        """A small generating set found greedily (not necessarily minimum)."""
        gens: list[int] = []
        H = frozenset({self.identity})
        while len(H) < self.order:
            best = max((g for g in self.elements() if g not in H),
                       key=lambda g: (len(self.generated(gens + [g])), -g))
            gens.append(best)
            H = self.generated(gens)
        return gens

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def summary(self) -> dict:
        return {"type": "finite", "name": self.name, "order": self.order}

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table and self.names == other.names

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


class FreeAbelianGroup:
    """Z^n with elements as integer exponent vectors."""

    kind = "free_abelian"
    is_finite = False
    order = math.inf

    def __init__(self, n: int):
        if n < 1:
            raise GroupError("free abelian rank must be >= 1")
        self.n = n
        self.identity = (0,) * n
        self.name = "Z" if n == 1 else f"Z^{n}"

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def normal_form(self, a) -> tuple[int, ...]:
        if isinstance(a, int) and self.n == 1:
            a = (a,)
        a = tuple(int(x) for x in a)
        if len(a) != self.n:
            raise GroupError(f"exponent vector {a} has length {len(a)}, expected {self.n}")
        return a

    def standard_generators(self):
        out = []
        for i in range(self.n):
            for s in (1, -1):
                e = [0] * self.n
                e[i] = s
                out.append(tuple(e))
        return out

    def radial_key(self, a):
        """Invariant of the signed-permutation symmetry fixing the standard generators."""
        return tuple(sorted(abs(x) for x in a))

    def summary(self) -> dict:
        return {"type": "free_abelian", "n": self.n}

    def __eq__(self, other):
        return isinstance(other, FreeAbelianGroup) and other.n == self.n

    def __hash__(self):
        return hash(("Z^n", self.n))

    def __repr__(self):
        return f"FreeAbelianGroup({self.n})"


class FreeGroup:
    """F_k with elements as reduced words; letter i > 0 is x_i, -i is its inverse."""

    kind = "free"
    is_finite = False
    order = math.inf

    def __init__(self, k: int):
        if k < 1:
            raise GroupError("free group rank must be >= 1")
        self.k = k
        self.identity = ()
        self.name = f"F{k}"

    def mul(self, a, b):
        a = list(a)
        i = 0
        while a and i < len(b) and a[-1] == -b[i]:
            a.pop()
            i += 1
        return tuple(a) + tuple(b[i:])

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def normal_form(self, a) -> tuple[int, ...]:
        word: tuple[int, ...] = ()
        for x in a:
            x = int(x)
            if x == 0 or abs(x) > self.k:
                raise GroupError(f"letter {x} is not a generator of F{self.k}")
            word = self.mul(word, (x,))
        return word

    def standard_generators(self):
        return [(s * i,) for i in range(1, self.k + 1) for s in (1, -1)]

    def radial_key(self, a):
        """Word length; the automorphisms of the Cayley tree fixing e act transitively on spheres."""
        return len(a)

    def summary(self) -> dict:
        return {"type": "free", "k": self.k}

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and other.k == self.k

    def __hash__(self):
        return hash(("F_k", self.k))

    def __repr__(self):
        return f"FreeGroup({self.k})"


GroupSpec = FiniteGroup | FreeAbelianGroup | FreeGroup


# -- finite group constructors ------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, [str(i) for i in range(n)], name=f"Z/{n}", generators=[1 % n] if n > 1 else [],
                       check=False)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], ["e"], name="1", generators=[], check=False)


def dihedral(n: int) -> FiniteGroup:
    """Symmetry group of the regular n-gon, of order 2n; r^i s^e has index i + n*e."""
    if n < 1:
        raise GroupError("dihedral parameter must be >= 1")

    def mul(a, b):
        i, e = a % n, a // n
        j, f = b % n, b // n
        k = (i + (-j if e else j)) % n
        return k + n * (e ^ f)

    N = 2 * n
    table = [[mul(a, b) for b in range(N)] for a in range(N)]
    names = [f"r{a % n}" + ("s" if a >= n else "") for a in range(N)]
    gens = [1 % n, n] if n > 1 else [n]
    return FiniteGroup(table, names, name=f"D{n}", generators=gens, check=False)


def from_permutations(gens: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """Permutation group generated by ``gens`` (images of 0..m-1)."""
    gens = [tuple(g) for g in gens]
    m = len(gens[0]) if gens else 1
    ident = tuple(range(m))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[g[i]] for i in range(m))  # x after g
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    order = sorted(elems)
    index = {p: i for i, p in enumerate(order)}
    table = [[index[tuple(a[b[i]] for i in range(m))] for b in order] for a in order]
    names = ["(" + " ".join(map(str, p)) + ")" for p in order]
    return FiniteGroup(table, names, name=name, generators=[index[g] for g in gens], check=False)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([[0]], ["()"], name="S1", generators=[], check=False)
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return from_permutations(gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup([[0]], ["()"], name=f"A{n}", generators=[], check=False)
    gens = [tuple([1, 2, 0] + list(range(3, n)))]
    for k in range(3, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return from_permutations(gens, name=f"A{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) at index g * |H| + h."""
    m = H.order
    N = G.order * m
    table = [[G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(N)] for a in range(N)]
    names = [f"({G.names[a // m]},{H.names[a % m]})" for a in range(N)]
    gens = [g * m + H.identity for g in G.standard_generators()] + [G.identity * m + h for h in H.standard_generators()]
    return FiniteGroup(table, names, name=f"{G.name}x{H.name}", generators=gens, check=False)


def finite_group_by_name(name: str) -> FiniteGroup:
    """Parse names like ``Z/4``, ``C3``, ``S3``, ``A4``, ``D4``, ``V4``, ``Z/2xZ/2``, ``1``."""
    name = name.strip()
    parts = [p for p in re.split(r"\s*[x×]\s*", name) if p]
    if len(parts) > 1:
        out = finite_group_by_name(parts[0])
        for p in parts[1:]:
            out = direct_product(out, finite_group_by_name(p))
        out.name = name
        return out
    if name in ("1", "e", "trivial"):
        return trivial_group()
    if name in ("V4", "K4"):
        G = direct_product(cyclic(2), cyclic(2))
        G.name = name
        return G
    m = re.fullmatch(r"(?:Z/|C_?|Z_)(\d+)", name)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"S_?(\d+)", name)
    if m:
        return symmetric(int(m.group(1)))
    m = re.fullmatch(r"A_?(\d+)", name)
    if m:
        return alternating(int(m.group(1)))
    m = re.fullmatch(r"D_?(\d+)", name)
    if m:
        return dihedral(int(m.group(1)))
    raise GroupError(f"unknown finite group name {name!r}")


def group_by_name(name: str) -> GroupSpec:
    """Finite names as above, plus ``Z``, ``Z^n``, ``Fk``."""
    s = name.strip()
    if s == "Z":
        return FreeAbelianGroup(1)
    m = re.fullmatch(r"Z\^(\d+)", s)
    if m:
        return FreeAbelianGroup(int(m.group(1)))
    m = re.fullmatch(r"F_?(\d+)", s)
    if m:
        return FreeGroup(int(m.group(1)))
    return finite_group_by_name(s)


# -- group rings ------------------------------------------------------------


def gr_clean(x: Mapping) -> GroupRingElement:
    return {g: Fraction(c) for g, c in x.items() if c}


def gr_add(x: Mapping, y: Mapping) -> GroupRingElement:
    out = dict(x)
    for g, c in y.items():
        out[g] = out.get(g, 0) + c
    return gr_clean(out)


def gr_scale(x: Mapping, c) -> GroupRingElement:
    return gr_clean({g: c * v for g, v in x.items()})


def gr_mul(G, x: Mapping, y: Mapping) -> GroupRingElement:
    out: dict = {}
    for g, a in x.items():
        for h, b in y.items():
            k = G.mul(g, h)
            out[k] = out.get(k, 0) + a * b
    return gr_clean(out)


def gr_left(G, g, x: Mapping) -> GroupRingElement:
    """g * x."""
    return {G.mul(g, h): c for h, c in x.items()}


def gr_one(G) -> GroupRingElement:
    return {G.identity: Fraction(1)}


def gr_matmul(G, A: Sequence[Sequence[Mapping]], B: Sequence[Sequence[Mapping]]) -> list[list[GroupRingElement]]:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc: GroupRingElement = {}
            for t in range(k):
                if A[i][t] and B[t][j]:
                    acc = gr_add(acc, gr_mul(G, A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


def is_injective_homomorphism(D: FiniteGroup, G: FiniteGroup, emb: Sequence[int]) -> bool:
    if len(emb) != D.order or len(set(emb)) != D.order:
        return False
    if any(not 0 <= x < G.order for x in emb):
        return False
    return all(emb[D.mul(a, b)] == G.mul(emb[a], emb[b]) for a, b in itertools.product(D.elements(), repeat=2))


def find_embedding(D: FiniteGroup, G: FiniteGroup) -> list[int] | None:
    """Some injective homomorphism D -> G, by backtracking over images of generators."""
    gens = D.minimal_generators()
    if not gens:
        return [G.identity]
    for images in itertools.product(G.elements(), repeat=len(gens)):
        emb = _extend_hom(D, G, gens, images)
        if emb is not None and len(set(emb)) == D.order:
            return emb
    return None


def _extend_hom(D, G, gens, images):
    emb = {D.identity: G.identity}
    frontier = [D.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, images):
                y = D.mul(x, g)
                v = G.mul(emb[x], im)
                if y in emb:
                    if emb[y] != v:
                        return None
                else:
                    emb[y] = v
                    nxt.append(y)
        frontier = nxt
    out = [emb[d] for d in D.elements()]
    if not is_injective_homomorphism(D, G, out):
        return None
    return out
