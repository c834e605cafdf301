from fractions import Fraction

import pytest

import oracles
from corpus import random_finite_corpus
from l2dim.burnside import example9_table
from l2dim.constructions import antipodal_circle, circle_z, sphere_trivial, torus_z2, wedge_of_circles
from l2dim.extdim import INF
from l2dim.gcw import (
    Cell,
    ComplexError,
    GammaCWComplex,
    OrbitType,
    expand_to_plain_complex,
    finite_orbit,
    induce_complex,
    l2_euler_characteristic,
    point,
    validate,
)
from l2dim.groups import FreeAbelianGroup, cyclic, symmetric, trivial_group
from l2dim.linalg import chain_homology_ranks


class TestValidate:
    def test_circle_is_valid(self):
        assert validate(circle_z()).valid

    def test_torus_is_valid(self):
        assert validate(torus_z2()).valid

    def test_nonzero_composite_names_the_cell(self):
        Z = FreeAbelianGroup(1)
        X = GammaCWComplex(Z, (
            Cell.make("v", 0),
            Cell.make("e", 1, boundary=[("v", {(0,): 1})]),
            Cell.make("f", 2, boundary=[("e", {(0,): 1})]),
        ))
        rep = validate(X)
        assert not rep.valid
        assert any("'f'" in e for e in rep.errors)

    def test_nonzero_composite_finite(self):
        G = cyclic(2)
        X = GammaCWComplex(G, (
            Cell.make("v", 0),
            Cell.make("e", 1, boundary=[("v", {0: 1})]),
            Cell.make("f", 2, boundary=[("e", {0: 1})]),
        ))
        rep = validate(X)
        assert not rep.valid and any("'f'" in e for e in rep.errors)

    def test_order_zero(self):
        X = GammaCWComplex(FreeAbelianGroup(1), (Cell.make("v", 0, OrbitType(order=0)),))
        assert not validate(X).valid

    def test_duplicate_ids(self):
        X = GammaCWComplex(FreeAbelianGroup(1), (Cell.make("v", 0), Cell.make("v", 0)))
        assert any("duplicate" in e for e in validate(X).errors)

    def test_bad_target_dimension(self):
        X = GammaCWComplex(FreeAbelianGroup(1), (
            Cell.make("v", 0),
            Cell.make("f", 2, boundary=[("v", {(0,): 1})]),
        ))
        assert not validate(X).valid

    def test_missing_target(self):
        X = GammaCWComplex(FreeAbelianGroup(1), (Cell.make("e", 1, boundary=[("nope", {(0,): 1})]),))
        assert any("does not exist" in e for e in validate(X).errors)

    def test_non_subgroup_stabilizer(self):
        G = symmetric(3)
        t = next(g for g in G.elements() if G.element_order(g) == 3)
        H = frozenset({G.identity, t})
        X = GammaCWComplex(G, (Cell.make("v", 0, OrbitType(2, H)),))
        assert any("not a subgroup" in e for e in validate(X).errors)

    def test_stabilizer_must_fix_boundary(self):
        G = cyclic(2)
        X = GammaCWComplex(G, (
            Cell.make("v", 0),
            Cell.make("e", 1, finite_orbit(G, {0, 1}), boundary=[("v", {0: 1, 1: -1})]),
        ))
        assert any("invariant" in e for e in validate(X).errors)

    def test_connected_flag_checked_for_finite(self):
        G = cyclic(2)
        X = GammaCWComplex(G, (Cell.make("v", 0),), connected=True)
        assert any("disconnected" in e for e in validate(X).errors)

    def test_boundary_on_stabilized_cell_over_infinite_group(self):
        X = GammaCWComplex(FreeAbelianGroup(1), (
            Cell.make("v", 0),
            Cell.make("e", 1, OrbitType(order=2), boundary=[("v", {(0,): 1})]),
        ))
        assert not validate(X).valid


class TestEuler:
    def test_free_circle(self):
        chi, m = l2_euler_characteristic(circle_z())
        assert chi == 0
        # each cell contributes 1/|trivial stabilizer| = 1
        assert m == 2

    def test_orbit_point_order_six(self):
        X = point(symmetric(3))
        assert l2_euler_characteristic(X) == (Fraction(1, 6), Fraction(1, 6))

    def test_infinite_stabilizer_contributes_zero(self):
        X = point(FreeAbelianGroup(1))
        assert l2_euler_characteristic(X) == (0, 0)

    @pytest.mark.parametrize("p,r", [(2, 1), (3, 2), (5, 4), (7, 3)])
    def test_example_model(self, p, r):
        ex = example9_table(2, p, r)
        assert ex.l2_euler == 0

    def test_empty(self):
        X = GammaCWComplex(cyclic(3), ())
        assert l2_euler_characteristic(X) == (0, 0)

    def test_disjoint_union_additive(self):
        for X, Y in zip(random_finite_corpus(10, seed=1), random_finite_corpus(10, seed=2)):
            if X.group != Y.group:
                continue
            U = X.disjoint_union(Y)
            assert validate(U).valid
            assert l2_euler_characteristic(U)[0] == l2_euler_characteristic(X)[0] + l2_euler_characteristic(Y)[0]

    def test_matches_ordinary_euler_over_order(self):
        for X in random_finite_corpus(40, seed=3):
            C = expand_to_plain_complex(X)
            ordinary = sum((-1) ** p * n for p, n in enumerate(C.ranks))
            assert l2_euler_characteristic(X)[0] == Fraction(ordinary, X.group.order)


class TestExpansion:
    def test_antipodal_circle(self):
        C = expand_to_plain_complex(antipodal_circle())
        assert C.ranks == (2, 2)
        dense = [[list(r) for r in d.entries] for d in C.differentials]
        assert oracles.homology_ranks_from_boundaries([2, 2], dense) == [1, 1]

    def test_trivial_group(self):
        X = sphere_trivial()
        C = expand_to_plain_complex(X)
        assert C.ranks == (1, 0, 1)
        assert chain_homology_ranks(C) == [1, 0, 1]

    def test_orbit_point(self):
        assert expand_to_plain_complex(point(symmetric(3))).ranks == (1,)

    def test_rejects_infinite(self):
        with pytest.raises(ComplexError):
            expand_to_plain_complex(circle_z())

    def test_cell_counts_are_indices(self):
        for X in random_finite_corpus(30, seed=4):
            C = expand_to_plain_complex(X)
            for p, n in enumerate(C.ranks):
                assert n == sum(X.group.order // c.orbit.order for c in X.cells_of_dim(p))

    def test_commutes_with_disjoint_union(self):
        for X, Y in zip(random_finite_corpus(8, seed=5), random_finite_corpus(8, seed=6)):
            if X.group != Y.group:
                continue
            a, b = chain_homology_ranks(expand_to_plain_complex(X)), chain_homology_ranks(expand_to_plain_complex(Y))
            u = chain_homology_ranks(expand_to_plain_complex(X.disjoint_union(Y)))
            n = max(len(a), len(b))
            a, b = a + [0] * (n - len(a)), b + [0] * (n - len(b))
            assert u == [x + y for x, y in zip(a, b)]


class TestInduction:
    def test_identity_embedding(self):
        X = antipodal_circle()
        Y = induce_complex(X, X.group, list(X.group.elements()))
        assert Y == X

    def test_point_from_trivial_group(self):
        X = point(trivial_group())
        Y = induce_complex(X, cyclic(2), [0])
        assert expand_to_plain_complex(Y).ranks == (2,)

    def test_z2_into_z4(self):
        Y = induce_complex(antipodal_circle(), cyclic(4), [0, 2])
        assert validate(Y).valid
        assert expand_to_plain_complex(Y).ranks == (4, 4)

    def test_rejects_non_homomorphism(self):
        with pytest.raises(ComplexError):
            induce_complex(antipodal_circle(), cyclic(4), [0, 1])

    def test_rejects_infinite(self):
        with pytest.raises(ComplexError):
            induce_complex(wedge_of_circles(2), cyclic(2), [0])


def test_point_infinite_stabilizer_default():
    X = point(FreeAbelianGroup(2))
    assert X.cells[0].orbit.order == INF
