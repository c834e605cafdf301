import json
from fractions import Fraction
from pathlib import Path

import pytest

from corpus import random_finite_corpus
from l2dim import io as jio
from l2dim.burnside import BurnsideElement, example9_table, subgroup_lattice
from l2dim.constructions import NAMED
from l2dim.groups import cyclic, finite_group_by_name
from l2dim.linalg import INTEGERS, LAURENT_UNI, LaurentPoly, RingMatrix, laurent_multi
from l2dim.pid import DirectedChain, FGModulePresentation, SubmoduleSpec, projection_chain

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
F = Fraction
z = LaurentPoly.variable(1, 0)


def sample(name):
    return jio.load_json(SAMPLES / f"{name}.json")


def through_text(doc):
    return json.loads(jio.dumps(doc))


class TestComplexRoundTrip:
    @pytest.mark.parametrize("name", sorted(NAMED))
    def test_named(self, name):
        X = NAMED[name]()
        doc = jio.complex_to_json(X)
        assert jio.complex_from_json(through_text(doc)) == X
        assert jio.dumps(jio.complex_to_json(jio.complex_from_json(doc))) == jio.dumps(doc)

    def test_random(self):
        for X in random_finite_corpus(30, seed=31):
            assert jio.complex_from_json(through_text(jio.complex_to_json(X))) == X

    def test_samples_load(self):
        for p in sorted(SAMPLES.glob("*.json")):
            doc = jio.load_json(p)
            if "cells" in doc and p.stem != "bad_boundary":
                jio.complex_from_json(doc)

    def test_class_id_stabilizer(self):
        G = finite_group_by_name("S3")
        t = subgroup_lattice(G)
        c2 = next(c.id for c in t.classes if c.order == 2)
        doc = {"format": 1, "group": jio.group_to_json(G),
               "cells": [{"id": "v", "dim": 0, "stabilizer": c2}]}
        X = jio.complex_from_json(doc)
        assert X.cells[0].orbit.order == 2


class TestTables:
    @pytest.mark.parametrize("name", ["Z/2", "S3", "D4", "A4"])
    def test_computed(self, name):
        t = subgroup_lattice(finite_group_by_name(name))
        back = jio.table_from_json(through_text(jio.table_to_json(t)))
        assert back.ids == t.ids and back.character == t.character

    def test_user_table_example9(self):
        t = example9_table(2, 5, 3).table
        back = jio.table_from_json(through_text(jio.table_to_json(t)))
        assert back.ids == t.ids
        assert back.character_matrix() == t.character_matrix()

    def test_tampered_computed_table(self):
        doc = jio.table_to_json(subgroup_lattice(cyclic(5)))
        doc["character"] = [row for row in doc["character"] if row[:2] != ["C0", "C1"]]
        doc["character"].append(["C0", "C1", 1, 7])
        with pytest.raises(jio.DomainInputError):
            jio.table_from_json(doc)

    def test_bad_diagonal(self):
        doc = {"format": 1, "classes": [{"id": "K", "order": 2}],
               "character": [["K", "K", 1, 2]]}
        with pytest.raises(jio.DomainInputError):
            jio.table_from_json(doc)


class TestModules:
    def test_integer_module(self):
        M = FGModulePresentation.from_rows(INTEGERS, [[2, 0], [0, 0]])
        assert jio.module_from_json(through_text(jio.module_to_json(M))) == M

    def test_laurent_module(self):
        M = FGModulePresentation.from_rows(LAURENT_UNI, [[z - 1, z ** 2 + F(1, 3)]])
        assert jio.module_from_json(through_text(jio.module_to_json(M))) == M

    def test_multivariate_module(self):
        a, b = LaurentPoly.gens(2)
        M = FGModulePresentation.from_rows(laurent_multi(2), [[a - b]])
        assert jio.module_from_json(through_text(jio.module_to_json(M))) == M

    def test_big_integer_as_string(self):
        M = FGModulePresentation.from_rows(INTEGERS, [[3 ** 60]])
        doc = jio.module_to_json(M)
        assert isinstance(doc["relations"][0][0], str)
        assert jio.module_from_json(doc) == M

    def test_submodule(self):
        K = jio.submodule_from_json(sample("submodule_Z"))
        assert jio.submodule_from_json(through_text(jio.submodule_to_json(K))).generators == K.generators

    def test_chain(self):
        C = projection_chain(3, INTEGERS)
        back = jio.chain_from_json(through_text(jio.chain_to_json(C)))
        assert back.modules == C.modules and back.maps == C.maps

    def test_chain_map_count(self):
        doc = jio.chain_to_json(DirectedChain(INTEGERS, (1, 1), (RingMatrix.identity(INTEGERS, 1),)))
        doc["maps"] = []
        with pytest.raises(jio.MalformedInput, match="/maps"):
            jio.chain_from_json(doc)


class TestBurnsideAndHS:
    def test_burnside_element(self):
        t = subgroup_lattice(finite_group_by_name("S3"))
        a = BurnsideElement.of({t.ids[0]: F(-1, 2), t.ids[-1]: 3})
        t2, a2 = jio.burnside_from_json(through_text(jio.burnside_to_json(t, a)))
        assert t2.ids == t.ids and a2 == a

    def test_hs(self):
        G, A = jio.hs_from_json(sample("hs_Z2"))
        G2, A2 = jio.hs_from_json(through_text(jio.hs_to_json(G, A)))
        assert G2 == G and A2 == A


class TestSchemaErrors:
    def test_missing_cells(self):
        doc = sample("circle_Z")
        del doc["cells"]
        with pytest.raises(jio.MalformedInput):
            jio.complex_from_json(doc)

    def test_error_names_the_path(self):
        doc = sample("circle_Z")
        doc["cells"][1]["dim"] = "one"
        with pytest.raises(jio.MalformedInput, match="/cells/1/dim"):
            jio.complex_from_json(doc)

    def test_bad_rational(self):
        doc = sample("module_Z")
        doc["relations"][0][0] = [1, 0]
        with pytest.raises(jio.MalformedInput):
            jio.module_from_json(doc)

    def test_row_length(self):
        doc = sample("module_Z")
        doc["relations"][0] = [1]
        with pytest.raises(jio.MalformedInput, match="/relations/0"):
            jio.module_from_json(doc)

    def test_unknown_stabilizer_class(self):
        doc = sample("antipodal_circle")
        doc["cells"][0]["stabilizer"] = "C99"
        with pytest.raises(jio.MalformedInput, match="C99"):
            jio.complex_from_json(doc)

    def test_not_json(self, tmp_path):
        p = tmp_path / "x.json"
        p.write_text("{nope")
        with pytest.raises(jio.MalformedInput):
            jio.load_json(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(jio.MalformedInput):
            jio.load_json(tmp_path / "absent.json")


class TestDomainErrors:
    def test_bad_boundary(self):
        with pytest.raises(jio.DomainInputError, match="'f'"):
            jio.complex_from_json(sample("bad_boundary"))

    def test_bad_boundary_unchecked(self):
        X = jio.complex_from_json(sample("bad_boundary"), check=False)
        assert len(X.cells) == 3


def test_rational_encoding():
    assert jio.enc(F(3, 6)) == [1, 2]
    assert jio.rat([2, 4]) == F(1, 2)
    assert jio.rat(5) == 5
    with pytest.raises(jio.MalformedInput):
        jio.rat("inf")


def test_dumps_is_deterministic():
    X = NAMED["torus_Z2"]()
    assert jio.dumps(jio.complex_to_json(X)) == jio.dumps(jio.complex_to_json(NAMED["torus_Z2"]()))
