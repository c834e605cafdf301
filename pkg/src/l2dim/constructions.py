"""Named complexes and random complexes over finite groups."""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from .burnside import all_subgroups
from .gcw import Cell, GammaCWComplex, OrbitType, expand_to_plain_complex
from .groups import FiniteGroup, FreeAbelianGroup, FreeGroup, cyclic, trivial_group
from .linalg import chain_homology_ranks, rational_kernel


def circle_z() -> GammaCWComplex:
    """Real line with Z acting by translation."""
    Z = FreeAbelianGroup(1)
    return GammaCWComplex(Z, (
        Cell.make("v", 0),
        Cell.make("e", 1, boundary=[("v", {(1,): 1, (0,): -1})]),
    ), connected=True)


def torus_z2() -> GammaCWComplex:
    """Plane with the standard Z^2 cell structure."""
    Z2 = FreeAbelianGroup(2)
    o, x, y = (0, 0), (1, 0), (0, 1)
    return GammaCWComplex(Z2, (
        Cell.make("v", 0),
        Cell.make("a", 1, boundary=[("v", {x: 1, o: -1})]),
        Cell.make("b", 1, boundary=[("v", {y: 1, o: -1})]),
        Cell.make("f", 2, boundary=[("a", {o: 1, y: -1}), ("b", {x: 1, o: -1})]),
    ), connected=True)


def circle_wedge_sphere_z() -> GammaCWComplex:
    """Universal cover of S^1 v S^2: a line with a sphere attached at each integer."""
    X = circle_z()
    return GammaCWComplex(X.group, X.cells + (Cell.make("s", 2),), connected=True)


def wedge_of_circles(k: int) -> GammaCWComplex:
    """Cayley tree of F_k: one vertex orbit, one edge orbit per generator."""
    F = FreeGroup(k)
    cells = [Cell.make("v", 0)]
    for i in range(1, k + 1):
        cells.append(Cell.make(f"e{i}", 1, boundary=[("v", {(i,): 1, (): -1})]))
    return GammaCWComplex(F, tuple(cells), connected=True)


def subdivided_wedge() -> GammaCWComplex:
    """Wedge of two circles with the second loop subdivided by an extra vertex."""
    F = FreeGroup(2)
    return GammaCWComplex(F, (
        Cell.make("v", 0),
        Cell.make("u", 0),
        Cell.make("a", 1, boundary=[("v", {(1,): 1, (): -1})]),
        Cell.make("b1", 1, boundary=[("u", {(): 1}), ("v", {(): -1})]),
        Cell.make("b2", 1, boundary=[("v", {(2,): 1}), ("u", {(): -1})]),
    ), connected=True)


def free_circle(n: int) -> GammaCWComplex:
    """Circle with Z/n rotating freely (n vertices, n edges)."""
    G = cyclic(n)
    return GammaCWComplex(G, (
        Cell.make("v", 0),
        Cell.make("e", 1, boundary=[("v", {1 % n: 1, 0: -1})]),
    ), connected=True)


def antipodal_circle() -> GammaCWComplex:
    return free_circle(2)


def orbit_point(G, H=None) -> GammaCWComplex:
    """Gamma/H as a 0-dimensional complex (H = Gamma by default)."""
    from .gcw import point

    return point(G, H)


def sphere_trivial() -> GammaCWComplex:
    """S^2 with one 0-cell and one 2-cell over the trivial group."""
    G = trivial_group()
    return GammaCWComplex(G, (Cell.make("v", 0), Cell.make("s", 2)), connected=True)


NAMED = {
    "circle_Z": circle_z,
    "torus_Z2": torus_z2,
    "circle_wedge_sphere_Z": circle_wedge_sphere_z,
    "wedge2_F2": lambda: wedge_of_circles(2),
    "wedge3_F3": lambda: wedge_of_circles(3),
    "subdivided_wedge_F2": subdivided_wedge,
    "antipodal_circle": antipodal_circle,
    "sphere_trivial": sphere_trivial,
}


# -- random complexes -----------------------------------------------------------------


def _orbit(H: frozenset[int]) -> OrbitType:
    return OrbitType(order=len(H), subgroup=H)


def random_finite_complex(G: FiniteGroup, rng: random.Random, max_dim: int = 3,
                          max_orbits: int = 3, subgroups=None) -> GammaCWComplex:
    """A valid complex over G with random stabilizers and boundaries.

    Edges join translates a.v and b.w with stabilizer inside both vertex
    stabilizers' conjugates.  Higher cells are attached along random cycles of
    the expanded complex, symmetrized over the chosen stabilizer so that the
    boundary is invariant.
    """
    subs = subgroups if subgroups is not None else all_subgroups(G)
    cells: list[Cell] = []
    for i in range(rng.randint(1, max_orbits)):
        cells.append(Cell.make(f"v{i}", 0, _orbit(rng.choice(subs))))
    verts = list(cells)
    for i in range(rng.randint(0, max_orbits + 1)):
        v, w = rng.choice(verts), rng.choice(verts)
        a, b = rng.randrange(G.order), rng.randrange(G.order)
        allowed = G.conjugate_subgroup(a, v.orbit.subgroup) & G.conjugate_subgroup(b, w.orbit.subgroup)
        H = rng.choice([S for S in subs if S <= allowed])
        bd = {}
        for t, g, s in ((v.id, a, 1), (w.id, b, -1)):
            bd.setdefault(t, {})
            bd[t][g] = bd[t].get(g, 0) + s
        cells.append(Cell.make(f"e{i}", 1, _orbit(H), bd.items()))
    for p in range(2, max_dim + 1):
        X = GammaCWComplex(G, tuple(cells))
        C = expand_to_plain_complex(X)
        if len(C.ranks) < p or C.ranks[p - 1] == 0:
            break
        basis = [(c.id, k) for c in X.cells_of_dim(p - 1) for k in range(G.order // c.orbit.order)]
        reps = {c.id: [min(cs) for cs in G.left_cosets(c.orbit.subgroup)] for c in X.cells_of_dim(p - 1)}
        coset_of = {c.id: _coset_index(G, c.orbit.subgroup) for c in X.cells_of_dim(p - 1)}
        d = C.differentials[p - 2]
        kernel = rational_kernel([list(r) for r in d.entries], d.cols)
        if not kernel:
            break
        for i in range(rng.randint(0, max_orbits)):
            z = [Fraction(0)] * len(basis)
            for vec in kernel:
                c = rng.choice((-1, 0, 0, 1))
                if c:
                    z = [a + c * b for a, b in zip(z, vec)]
            den = lcm(*(x.denominator for x in z))
            z = [x * den for x in z]
            H = rng.choice(subs)
            sym = [Fraction(0)] * len(basis)
            pos = {b: j for j, b in enumerate(basis)}
            for h in H:
                for j, x in enumerate(z):
                    if x:
                        cid, k = basis[j]
                        target = (cid, coset_of[cid][G.mul(h, reps[cid][k])])
                        sym[pos[target]] += x
            bd: dict[str, dict] = {}
            for j, x in enumerate(sym):
                if x:
                    cid, k = basis[j]
                    bd.setdefault(cid, {})[reps[cid][k]] = x
            cells.append(Cell.make(f"c{p}_{i}", p, _orbit(H), bd.items()))
    X = GammaCWComplex(G, tuple(cells))
    b0 = chain_homology_ranks(expand_to_plain_complex(X))[0]
    return GammaCWComplex(G, X.cells, connected=b0 == 1)


def _coset_index(G: FiniteGroup, H: frozenset[int]) -> list[int]:
    idx = [0] * G.order
    for k, cs in enumerate(G.left_cosets(H)):
        for g in cs:
            idx[g] = k
    return idx


__all__ = [
    "NAMED",
    "antipodal_circle",
    "circle_wedge_sphere_z",
    "circle_z",
    "free_circle",
    "orbit_point",
    "random_finite_complex",
    "sphere_trivial",
    "subdivided_wedge",
    "torus_z2",
    "wedge_of_circles",
]
