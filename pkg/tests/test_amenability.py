from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from l2dim.amenability import (
    AMENABLE,
    INCONCLUSIVE,
    NONAMENABLE,
    WalkSupportError,
    free_group_bound_holds,
    kesten_evidence,
    return_probabilities,
    root_decimal,
    roots_nondecreasing,
)
from l2dim.groups import FreeAbelianGroup, FreeGroup, GroupError, cyclic, finite_group_by_name

F = Fraction
Z = FreeAbelianGroup(1)
F2 = FreeGroup(2)


class TestExamples:
    def test_z(self):
        assert return_probabilities(Z, [(1,), (-1,)], 2) == [F(1, 2), F(3, 8)]

    def test_f2(self):
        assert return_probabilities(F2, F2.standard_generators(), 2) == [F(1, 4), F(7, 64)]

    def test_z2(self):
        G = cyclic(2)
        assert return_probabilities(G, [1], 3) == [1, 1, 1]


class TestOracles:
    def test_z_binomial(self):
        probs = return_probabilities(Z, Z.standard_generators(), 25)
        assert probs == [oracles.central_binomial_return(n) for n in range(1, 26)]

    @pytest.mark.parametrize("k", [2, 3])
    def test_tree_counts(self, k):
        G = FreeGroup(k)
        probs = return_probabilities(G, G.standard_generators(), 15)
        d = 2 * k
        assert probs == [F(oracles.tree_closed_walks(n, d), d ** (2 * n)) for n in range(1, 16)]

    def test_closed_form_vs_dp(self):
        for n in range(1, 12):
            assert oracles.tree_closed_walks(n, 4) == oracles.tree_closed_walks_dp(n, 4)

    @pytest.mark.parametrize("G", [FreeAbelianGroup(2), FreeGroup(2)], ids=["Z2", "F2"])
    def test_lumped_equals_sparse(self, G):
        S = G.standard_generators()
        assert return_probabilities(G, S, 6, method="radial") == return_probabilities(G, S, 6, method="sparse")


class TestProperties:
    @pytest.mark.parametrize("G,S", [
        (FreeAbelianGroup(1), None), (FreeAbelianGroup(2), None), (FreeGroup(2), None),
        (FreeGroup(2), [(1,), (-1,), (1, 2), (-2, -1)]), (finite_group_by_name("S3"), None),
    ], ids=["Z", "Z2", "F2", "F2-other", "S3"])
    def test_supermultiplicative(self, G, S):
        S = S or G.standard_generators()
        p = return_probabilities(G, S, 10)
        assert all(x > 0 for x in p)
        for n in range(1, 11):
            for m in range(1, 11 - n):
                assert p[n + m - 1] >= p[n - 1] * p[m - 1]
        assert roots_nondecreasing(p)

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_free_group_bound(self, k):
        G = FreeGroup(k)
        assert free_group_bound_holds(return_probabilities(G, G.standard_generators(), 20), k)

    @pytest.mark.parametrize("name,gens", [
        ("Z/3", [1, 2]), ("Z/5", [1, 4]), ("Z/4", [1, 3, 2]), ("V4", [1, 2, 3]), ("S3", None), ("A4", None),
    ])
    def test_finite_convergence(self, name, gens):
        G = finite_group_by_name(name)
        S = gens or G.standard_generators()
        n = 4 * G.order
        p = return_probabilities(G, S, n)[-1]
        assert abs(p - F(1, G.order)) <= F(1, G.order ** 2)

    def test_bipartite_limit_is_twice(self):
        G = cyclic(4)
        p = return_probabilities(G, [1, 3], 16)[-1]
        assert abs(p - F(2, 4)) <= F(1, 16)

    @given(st.fractions(min_value=F(1, 1000), max_value=1), st.integers(1, 40))
    def test_root_decimal(self, p, k):
        r = float(root_decimal(p, k))
        assert abs(r - float(p) ** (1 / k)) < 1e-9


class TestErrors:
    def test_not_symmetric(self):
        with pytest.raises(GroupError):
            return_probabilities(Z, [(1,)], 3)

    def test_identity(self):
        with pytest.raises(GroupError):
            return_probabilities(cyclic(3), [0, 1, 2], 3)

    def test_support_bound(self):
        with pytest.raises(WalkSupportError):
            return_probabilities(F2, [(1,), (-1,), (1, 2), (-2, -1), (2,), (-2,)], 12, bound=1000)

    def test_lumped_walk_needs_standard(self):
        with pytest.raises(ValueError):
            return_probabilities(F2, [(1,), (-1,), (1, 2), (-2, -1)], 3, method="radial")

    def test_margin(self):
        with pytest.raises(ValueError):
            kesten_evidence(Z, Z.standard_generators(), 3, 0)


class TestVerdicts:
    def test_z(self):
        r = kesten_evidence(Z, Z.standard_generators(), 30, F(1, 10))
        assert r.verdict == AMENABLE and r.monotone
        assert Fraction(r.lower_bounds[-1]) > F(9, 10)

    def test_f2(self):
        r = kesten_evidence(F2, F2.standard_generators(), 30, F(1, 10))
        assert r.verdict == NONAMENABLE and r.monotone
        assert all(p ** 2 <= F(3, 4) ** (2 * n) for n, p in enumerate(r.probabilities, start=1))

    def test_f2_nonstandard_is_inconclusive(self):
        r = kesten_evidence(F2, [(1,), (-1,), (1, 2), (-2, -1)], 8, F(1, 10))
        assert r.verdict == INCONCLUSIVE

    @pytest.mark.parametrize("name", ["Z/2", "Z/3", "S3", "A4"])
    def test_finite(self, name):
        G = finite_group_by_name(name)
        assert kesten_evidence(G, G.standard_generators(), 30, F(1, 10)).verdict == AMENABLE
