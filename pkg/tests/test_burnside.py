import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from corpus import random_finite_corpus
from l2dim.burnside import (
    BurnsideElement,
    BurnsideError,
    _fixed_point_character,
    _formula_character,
    character_value,
    equivariant_euler,
    example9_table,
    fixed_point_complex,
    global_character,
    hattori_stallings,
    integrality_conditions,
    l2_euler_of,
    subgroup_lattice,
    user_table,
    weyl_group,
)
from l2dim.constructions import free_circle, orbit_point
from l2dim.gcw import GammaCWComplex, l2_euler_characteristic
from l2dim.groups import FreeAbelianGroup, cyclic, finite_group_by_name, symmetric, trivial_group

F = Fraction
CROSS = ["Z/2", "Z/4", "Z/2xZ/2", "S3", "D4", "A4"]


def brute_character(G, K, H):
    """|WK|^-1 |(G/H)^K| with cosets as explicit sets and NK by brute force."""
    cosets = {frozenset(G.mul(g, h) for h in H) for g in G.elements()}
    fixed = [c for c in cosets if all(frozenset(G.mul(k, x) for x in c) == c for k in K)]
    NK = [g for g in G.elements() if {G.mul(G.mul(g, k), G.inv(g)) for k in K} == set(K)]
    return F(len(fixed) * len(K), len(NK))


class TestLattice:
    @pytest.mark.parametrize("name,orders", [
        ("1", [1]),
        ("Z/4", [1, 2, 4]),
        ("S3", [1, 2, 3, 6]),
        ("V4", [1, 2, 2, 2, 4]),
        ("D4", [1, 2, 2, 2, 4, 4, 4, 8]),
        ("A4", [1, 2, 3, 4, 12]),
    ])
    def test_class_orders(self, name, orders):
        t = subgroup_lattice(finite_group_by_name(name))
        assert [c.order for c in t.classes] == orders

    def test_s4_and_s5_counts(self):
        assert len(subgroup_lattice(symmetric(4)).classes) == 11
        assert len(subgroup_lattice(symmetric(5)).classes) == 19

    def test_order_bound(self):
        with pytest.raises(BurnsideError):
            subgroup_lattice(symmetric(5), max_order=60)

    def test_weyl_orders_s3(self):
        t = subgroup_lattice(symmetric(3))
        assert [t.weyl_order[c] for c in t.ids] == [6, 1, 2, 1]


class TestCharacter:
    @pytest.mark.parametrize("name", CROSS)
    def test_formula_equals_fixed_point_count(self, name):
        t = subgroup_lattice(finite_group_by_name(name))
        G = t.group
        for K in t.ids:
            for H in t.ids:
                a = _formula_character(t, K, H)
                assert a == _fixed_point_character(t, K, H)
                assert a == brute_character(G, t.representatives[K], t.representatives[H])

    @pytest.mark.parametrize("name", CROSS + ["S4"])
    def test_unit_upper_triangular(self, name):
        t = subgroup_lattice(finite_group_by_name(name))
        A = t.character_matrix()
        n = len(A)
        assert all(A[i][i] == 1 for i in range(n))
        assert all(A[i][j] == 0 for i in range(n) for j in range(i))

    def test_trivial_k(self):
        t = subgroup_lattice(symmetric(3))
        for H in t.ids:
            assert character_value(t, "C0", H) == F(1, t.get(H).order)

    def test_s3_c2(self):
        t = subgroup_lattice(symmetric(3))
        c2 = next(c.id for c in t.classes if c.order == 2)
        assert character_value(t, c2, c2) == 1
        assert t.weyl_order[c2] == 1

    def test_s3_matrix(self):
        t = subgroup_lattice(symmetric(3))
        assert t.character_matrix() == [
            [1, F(1, 2), F(1, 3), F(1, 6)],
            [0, 1, 0, 1],
            [0, 0, 1, F(1, 2)],
            [0, 0, 0, 1],
        ]

    def test_zp_free_orbit(self):
        t = subgroup_lattice(cyclic(5))
        assert global_character(t, {"C0": 1}) == [1, 0]
        assert global_character(t, {}) == [0, 0]

    def test_basis_vectors(self):
        t = subgroup_lattice(finite_group_by_name("D4"))
        for j, H in enumerate(t.ids):
            eta = global_character(t, {H: 1})
            assert eta[j] == 1
            for i, K in enumerate(t.ids):
                if not t.is_subconjugate(K, H):
                    assert eta[i] == 0


@pytest.mark.parametrize("name", CROSS)
def test_round_trip_integer_elements(name):
    t = subgroup_lattice(finite_group_by_name(name))
    rng = random.Random(name)
    for _ in range(50):
        a = {k: rng.randint(-5, 5) for k in t.ids}
        res = integrality_conditions(t, global_character(t, a))
        assert res.passed
        assert list(res.preimage) == [a[k] for k in t.ids]


class TestCongruences:
    def test_free_orbit(self):
        t = subgroup_lattice(cyclic(5))
        res = integrality_conditions(t, [1, 0])
        assert res.passed and res.preimage == (1, 0)

    def test_fails_on_one_over_p(self):
        t = subgroup_lattice(cyclic(5))
        res = integrality_conditions(t, [F(1, 5), 0])
        assert not res.passed and res.witnesses[0][0] == "C0"

    @given(st.integers(0, 40), st.integers(0, 40))
    def test_matches_classical_congruence(self, size, fixed):
        t = subgroup_lattice(cyclic(5))
        assert integrality_conditions(t, [F(size, 5), fixed]).passed == ((size - fixed) % 5 == 0)

    def test_brute_force_small_sets(self):
        t = subgroup_lattice(cyclic(5))
        seen = set()
        for n in range(0, 8):
            for s in oracles.order_five_permutations(n):
                fixed = sum(1 for i, j in enumerate(s) if i == j)
                seen.add((n, fixed))
        for n, fixed in seen:
            assert integrality_conditions(t, [F(n, 5), fixed]).passed
            assert not integrality_conditions(t, [F(n, 5) + F(1, 5), fixed]).passed
            assert not integrality_conditions(t, [F(n, 5), fixed + F(1, 5)]).passed


class TestExample9:
    def test_two_two(self):
        ex = example9_table(1, 2, 2)
        assert ex.euler.vector(ex.table) == [-1, 1, 1]
        assert ex.l2_euler == 0
        assert list(ex.character) == [0, 1, 1]

    @pytest.mark.parametrize("p,r", [(3, 1), (5, 3), (7, 2)])
    def test_general(self, p, r):
        ex = example9_table(3, p, r)
        assert ex.euler.vector(ex.table) == [F(-r, p)] + [1] * r
        assert ex.l2_euler == 0
        assert not ex.euler.is_integral

    def test_r_zero(self):
        ex = example9_table(2, 3, 0)
        assert ex.euler.vector(ex.table) == [0]

    def test_condition_text(self):
        ex = example9_table(2, 5, 3)
        assert ex.conditions[0] == "η₀ − (1/p)Σηᵢ ∈ Z"
        assert ex.conditions[1] == "ηᵢ ∈ Z (i = 1, …, r)"

    @pytest.mark.parametrize("r", [1, 2, 6])
    def test_condition_text_any_r(self, r):
        assert example9_table(1, 3, r).conditions[0] == "η₀ − (1/p)Σηᵢ ∈ Z"

    def test_not_prime(self):
        with pytest.raises(BurnsideError):
            example9_table(1, 4, 1)


class TestUserTable:
    def test_rejects_bad_diagonal(self):
        with pytest.raises(BurnsideError):
            user_table([{"id": "a", "order": 1, "weyl_order": 2}], [], {("a", "a"): 2})

    def test_rejects_non_subconjugate_value(self):
        classes = [{"id": "a", "order": 1, "weyl_order": 2}, {"id": "b", "order": 2, "weyl_order": 1}]
        with pytest.raises(BurnsideError):
            user_table(classes, [], {("a", "b"): F(1, 2)})

    def test_transitive_closure(self):
        classes = [{"id": "a", "order": 1}, {"id": "b", "order": 2}, {"id": "c", "order": 4}]
        t = user_table(classes, [("a", "b"), ("b", "c")],
                       {("a", "b"): F(1, 2), ("b", "c"): 1, ("a", "c"): F(1, 4)})
        assert t.is_subconjugate("a", "c")


class TestEquivariantEuler:
    def test_orbit_point(self):
        G = symmetric(3)
        t = subgroup_lattice(G)
        X = orbit_point(G)
        assert equivariant_euler(X, t).as_dict() == {t.ids[-1]: 1}

    def test_free_circle(self):
        G = cyclic(3)
        assert equivariant_euler(free_circle(3), subgroup_lattice(G)).as_dict() == {}

    def test_additive_and_l2(self):
        for X, Y in zip(random_finite_corpus(12, seed=31), random_finite_corpus(12, seed=32)):
            if X.group != Y.group:
                continue
            t = subgroup_lattice(X.group)
            U = X.disjoint_union(Y)
            assert equivariant_euler(U, t) == equivariant_euler(X, t) + equivariant_euler(Y, t)
            assert l2_euler_of(t, equivariant_euler(X, t)) == l2_euler_characteristic(X)[0]

    def test_empty(self):
        G = cyclic(2)
        assert equivariant_euler(GammaCWComplex(G, ()), subgroup_lattice(G)).as_dict() == {}


class TestFixedPoints:
    def test_trivial_k(self):
        X = free_circle(3)
        Y = fixed_point_complex(X, {0})
        assert l2_euler_characteristic(Y) == l2_euler_characteristic(X)

    def test_point(self):
        G = symmetric(3)
        t = subgroup_lattice(G)
        for K in t.ids:
            Y = fixed_point_complex(orbit_point(G), K, t)
            assert len(Y.cells) == 1

    def test_s3_mod_c2(self):
        G = symmetric(3)
        t = subgroup_lattice(G)
        c2 = next(c.id for c in t.classes if c.order == 2)
        X = orbit_point(G, t.representatives[c2])
        Y = fixed_point_complex(X, c2, t)
        assert len(Y.cells) == 1
        assert l2_euler_characteristic(Y)[0] == 1

    def test_weyl_group_order(self):
        G = symmetric(3)
        t = subgroup_lattice(G)
        for K in t.ids:
            W, _ = weyl_group(G, t.representatives[K])
            assert W.order == t.weyl_order[K]

    def test_fixed_point_identity(self):
        for X in random_finite_corpus(40, seed=33):
            t = subgroup_lattice(X.group)
            a = equivariant_euler(X, t)
            for K in t.ids:
                Y = fixed_point_complex(X, K, t)
                lhs = l2_euler_characteristic(Y)[0]
                rhs = sum((v * character_value(t, K, H) for H, v in a.coefficients), F(0))
                assert lhs == rhs


class TestHattoriStallings:
    def test_identity(self):
        G = cyclic(2)
        hs = hattori_stallings([[{0: 1}]], G)
        assert hs["0"] == 1 and hs["1"] == 0

    def test_averaging_projector(self):
        G = cyclic(2)
        hs = hattori_stallings([[{0: F(1, 2), 1: F(1, 2)}]], G)
        assert hs["0"] == F(1, 2) and hs["1"] == F(1, 2)

    def test_zero(self):
        assert hattori_stallings([[{}]], cyclic(3)).as_dict() == {}

    def test_not_idempotent(self):
        with pytest.raises(BurnsideError):
            hattori_stallings([[{0: 2}]], cyclic(2))

    def test_block_sum(self):
        G = symmetric(3)
        n = G.order
        avg = {g: F(1, n) for g in G.elements()}
        one = {G.identity: 1}
        a = hattori_stallings([[avg]], G)
        b = hattori_stallings([[one]], G)
        both = hattori_stallings([[avg, {}], [{}, one]], G)
        assert both == a + b

    def test_conjugation_invariant_projector(self):
        G = symmetric(3)
        # projector onto the sign-twisted average
        sign = {g: (1 if G.element_order(g) != 2 else -1) for g in G.elements()}
        P = {g: F(sign[g], 6) for g in G.elements()}
        hs = hattori_stallings([[P]], G)
        assert sum(hs.as_dict().values()) == F(1, 6) * (1 - 3 + 2)

    def test_free_abelian_identity(self):
        hs = hattori_stallings([[{(0,): 1}]], FreeAbelianGroup(1))
        assert hs.as_dict() == {"(0,)": 1}

    def test_trivial_group(self):
        assert hattori_stallings([[{0: 1}]], trivial_group()).as_dict() == {"e": 1}
