"""JSON ingestion and emission for complexes, tables, modules and reports.

Every document carries ``"format": 1``.  Rationals are ``[num, den]`` pairs
(integers above 2^53 as decimal strings) and infinity is ``"inf"``.
Documents are checked against a JSON schema first; failures raise
:class:`MalformedInput` with the JSON path of the offending value.
Mathematically invalid content (a non-associative table, d o d != 0, a
broken character table) raises :class:`DomainInputError`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .burnside import (
    COMPUTED,
    BurnsideElement,
    BurnsideError,
    FiniteSubgroupTable,
    subgroup_lattice,
    user_table,
)
from .extdim import INF, decode_rational, encode_rational, is_finite
from .gcw import Cell, GammaCWComplex, OrbitType, validate
from .groups import FiniteGroup, FreeAbelianGroup, FreeGroup, GroupError, finite_group_by_name
from .linalg import INTEGERS, LAURENT_UNI, RATIONALS, LaurentPoly, RingMatrix, RingTag, laurent_multi
from .pid import DirectedChain, FGModulePresentation, SubmoduleSpec

FORMAT = 1


class MalformedInput(ValueError):
    """The document does not match its schema or references unknown objects."""


class DomainInputError(ValueError):
    """The document is well formed but violates a mathematical invariant."""


# -- schemas ---------------------------------------------------------------------

_INT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?[0-9]+$"}]}
_RAT = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"},
        {"type": "array", "prefixItems": [_INT, _INT], "minItems": 2, "maxItems": 2},
    ]
}
_RING = {"oneOf": [{"enum": ["integers", "rationals", "laurent_uni"]},
                   {"type": "object", "required": ["laurent_multi"],
                    "properties": {"laurent_multi": {"type": "integer", "minimum": 1}}}]}
_FORMAT = {"const": FORMAT}
_TERM = {"type": "array", "minItems": 3, "maxItems": 3}  # [element, num, den]
_GR = {"type": "array", "items": _TERM}

_GROUP = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["finite", "free_abelian", "free"]},
        "n": {"type": "integer", "minimum": 1},
        "k": {"type": "integer", "minimum": 1},
        "name": {"type": "string"},
        "names": {"type": "array", "items": {"type": "string"}},
        "table": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "generators": {"type": "array", "items": {"type": "integer"}},
    },
    "allOf": [
        {"if": {"properties": {"type": {"const": "free_abelian"}}}, "then": {"required": ["n"]}},
        {"if": {"properties": {"type": {"const": "free"}}}, "then": {"required": ["k"]}},
        {"if": {"properties": {"type": {"const": "finite"}}},
         "then": {"anyOf": [{"required": ["table"]}, {"required": ["name"]}]}},
    ],
}

_TABLE_BODY = {
    "classes": {
        "type": "array",
        "minItems": 1,
        "items": {
            "type": "object",
            "required": ["id", "order"],
            "properties": {
                "id": {"type": "string"},
                "order": {"type": "integer", "minimum": 1},
                "weyl_order": {"oneOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]},
                "name": {"type": "string"},
            },
        },
    },
    "subconjugacy": {"type": "array", "items": {"type": "array", "items": {"type": "string"},
                                                 "minItems": 2, "maxItems": 2}},
    "character": {"type": "array", "items": {"type": "array", "minItems": 4, "maxItems": 4}},
}

SCHEMAS: dict[str, dict] = {
    "complex": {
        "type": "object",
        "required": ["group", "cells"],
        "properties": {
            "format": _FORMAT,
            "group": _GROUP,
            "connected": {"type": "boolean"},
            "cells": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "dim"],
                    "properties": {
                        "id": {"type": ["string", "integer"]},
                        "dim": {"type": "integer"},
                        "stabilizer": {
                            "oneOf": [
                                {"type": "string"},
                                {"type": "array", "items": {"type": "integer"}},
                                {"type": "object",
                                 "properties": {"order": {"oneOf": [{"type": "integer"}, {"const": "inf"}]},
                                                "class": {"type": "string"}},
                                 "anyOf": [{"required": ["order"]}, {"required": ["class"]}],
                                 "additionalProperties": False},
                            ]
                        },
                        "boundary": {
                            "type": "array",
                            "items": {"type": "array", "prefixItems": [{"type": ["string", "integer"]}, _GR],
                                      "minItems": 2, "maxItems": 2},
                        },
                    },
                },
            },
            "table": {"type": "object"},
        },
    },
    "table": {
        "type": "object",
        "anyOf": [{"required": ["classes"]}, {"required": ["group"]}],
        "properties": {"format": _FORMAT, "group": _GROUP, "provenance": {"enum": ["computed", "user"]},
                       **_TABLE_BODY},
    },
    "module": {
        "type": "object",
        "required": ["ring", "generators"],
        "properties": {
            "format": _FORMAT,
            "ring": _RING,
            "generators": {"type": "integer", "minimum": 0},
            "relations": {"type": "array", "items": {"type": "array"}},
        },
    },
    "submodule": {
        "type": "object",
        "required": ["module", "generators"],
        "properties": {"format": _FORMAT, "module": {"type": "object"},
                       "generators": {"type": "array", "items": {"type": "array"}}},
    },
    "chain": {
        "type": "object",
        "required": ["ring", "modules", "maps"],
        "properties": {
            "format": _FORMAT,
            "ring": _RING,
            "modules": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}},
            "maps": {"type": "array", "items": {"type": "array", "items": {"type": "array"}}},
        },
    },
    "burnside": {
        "type": "object",
        "required": ["table", "coefficients"],
        "properties": {"format": _FORMAT, "table": {"type": "object"},
                       "coefficients": {"type": "object", "additionalProperties": _RAT}},
    },
    "hs": {
        "type": "object",
        "required": ["group", "matrix"],
        "properties": {"format": _FORMAT, "group": _GROUP,
                       "matrix": {"type": "array", "items": {"type": "array", "items": _GR}}},
    },
}


def _path(err) -> str:
    return "/" + "/".join(str(p) for p in err.absolute_path)


def check_schema(doc: Any, kind: str):
    v = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errs = sorted(v.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errs:
        raise MalformedInput("; ".join(f"{_path(e)}: {e.message}" for e in errs[:5]))


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: not valid JSON ({exc})") from None
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- scalars ---------------------------------------------------------------------


def rat(v) -> Fraction:
    try:
        x = decode_rational(v)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise MalformedInput(f"bad rational {v!r}: {exc}") from None
    if not is_finite(x):
        raise MalformedInput("infinity is not allowed here")
    return x


def enc(x) -> list | str:
    return encode_rational(x)


def _ext_order(v):
    return INF if v == "inf" else int(v)


# -- groups ----------------------------------------------------------------------


def group_from_json(d: dict, where: str = "/group"):
    try:
        t = d["type"]
        if t == "free_abelian":
            return FreeAbelianGroup(d["n"])
        if t == "free":
            return FreeGroup(d["k"])
        if "table" in d:
            return FiniteGroup(d["table"], d.get("names"), d.get("name"), d.get("generators"))
        return finite_group_by_name(d["name"])
    except GroupError as exc:
        if "table" in d:
            raise DomainInputError(f"{where}: {exc}") from None
        raise MalformedInput(f"{where}: {exc}") from None


def group_to_json(G) -> dict:
    if isinstance(G, FreeAbelianGroup):
        return {"type": "free_abelian", "n": G.n}
    if isinstance(G, FreeGroup):
        return {"type": "free", "k": G.k}
    out = {"type": "finite", "name": G.name, "names": list(G.names), "table": [list(r) for r in G.table]}
    if G._gens is not None:
        out["generators"] = list(G._gens)
    return out


def element_from_json(G, v, where: str):
    try:
        if isinstance(G, FiniteGroup) and isinstance(v, str):
            if v not in G.names:
                raise GroupError(f"unknown element name {v!r}")
            return G.names.index(v)
        if isinstance(G, FreeAbelianGroup) and isinstance(v, int):
            return G.normal_form((v,) if G.n == 1 else v)
        return G.normal_form(v)
    except (GroupError, TypeError, ValueError) as exc:
        raise MalformedInput(f"{where}: {exc}") from None


def element_to_json(G, g):
    return g if isinstance(G, FiniteGroup) else list(g)


def gr_from_json(G, terms, where: str) -> dict:
    out: dict = {}
    for i, (g, num, den) in enumerate(terms):
        e = element_from_json(G, g, f"{where}/{i}/0")
        out[e] = out.get(e, 0) + rat([num, den])
    return out


def gr_to_json(G, x) -> list:
    return [[element_to_json(G, g), *enc(c)] for g, c in sorted(x.items() if isinstance(x, dict) else x)]


# -- subgroup tables ---------------------------------------------------------------


def table_from_json(doc: dict, max_order: int = 120, where: str = "") -> FiniteSubgroupTable:
    check_schema(doc, "table")
    try:
        if doc.get("provenance", "computed" if "group" in doc else "user") == "computed" and "group" in doc:
            G = group_from_json(doc["group"], f"{where}/group")
            if not isinstance(G, FiniteGroup):
                raise MalformedInput(f"{where}/group: computed tables need a finite group")
            t = subgroup_lattice(G, max_order)
            if "classes" in doc:
                given = table_from_json({k: v for k, v in doc.items() if k not in ("group", "provenance")},
                                        max_order, where)
                if (given.ids != t.ids or given.character != t.character
                        or given.weyl_order != t.weyl_order):
                    raise DomainInputError(f"{where}: stored table does not match the one computed from the group")
            return t
        classes = [
            {"id": c["id"], "order": c["order"], "name": c.get("name", c["id"]),
             "weyl_order": _ext_order(c.get("weyl_order", "inf"))}
            for c in doc["classes"]
        ]
        ids = {c["id"] for c in classes}
        for i, (a, b) in enumerate(doc.get("subconjugacy", [])):
            for x in (a, b):
                if x not in ids:
                    raise MalformedInput(f"{where}/subconjugacy/{i}: unknown class {x!r}")
        ch = {}
        for i, (k, h, num, den) in enumerate(doc.get("character", [])):
            if k not in ids or h not in ids:
                raise MalformedInput(f"{where}/character/{i}: unknown class")
            ch[(k, h)] = rat([num, den])
        return user_table(classes, doc.get("subconjugacy", []), ch)
    except BurnsideError as exc:
        raise DomainInputError(f"{where or '/'}: {exc}") from None


def table_to_json(t: FiniteSubgroupTable) -> dict:
    out: dict = {
        "format": FORMAT,
        "provenance": t.provenance,
        "classes": [
            {"id": c.id, "order": c.order, "name": c.name,
             "weyl_order": t.weyl_order[c.id] if is_finite(t.weyl_order[c.id]) else "inf"}
            for c in t.classes
        ],
        "subconjugacy": sorted([a, b] for a, b in t.subconjugacy),
        "character": [[k, h, *enc(v)] for (k, h), v in sorted(t.character.items()) if v],
    }
    if t.provenance == COMPUTED:
        out["group"] = group_to_json(t.group)
    return out


# -- complexes ---------------------------------------------------------------------


def _stabilizer(G, s, table, where: str, cache: dict) -> OrbitType:
    if s is None or s == "trivial":
        return OrbitType()
    if isinstance(G, FiniteGroup):
        if isinstance(s, list):
            H = frozenset(s)
            if not all(0 <= h < G.order for h in H):
                raise MalformedInput(f"{where}: element index out of range")
            return OrbitType(len(H), H)
        if isinstance(s, dict):
            raise MalformedInput(f"{where}: finite groups take an element list or a class id")
        if "lattice" not in cache:
            cache["lattice"] = subgroup_lattice(G, cache.get("max_order", 120))
        t = cache["lattice"]
        if s not in t.representatives:
            raise MalformedInput(f"{where}: unknown subgroup class {s!r} (known: {', '.join(t.ids)})")
        H = t.representatives[s]
        return OrbitType(len(H), H, s)
    if isinstance(s, dict):
        order = _ext_order(s.get("order")) if "order" in s else None
        cls = s.get("class")
    else:
        order, cls = None, s
    if cls is not None:
        if table is None:
            raise MalformedInput(f"{where}: class {cls!r} needs an inline subgroup table")
        try:
            k = table.get(cls).order
        except BurnsideError as exc:
            raise MalformedInput(f"{where}: {exc}") from None
        if order is not None and order != k:
            raise MalformedInput(f"{where}: order {order} contradicts class {cls!r} of order {k}")
        order = k
    if is_finite(order) and order < 1:
        raise DomainInputError(f"{where}: stabilizer order must be positive")
    return OrbitType(order, None, cls)


def complex_from_json(doc: dict, max_order: int = 120, check: bool = True) -> GammaCWComplex:
    check_schema(doc, "complex")
    G = group_from_json(doc["group"])
    table = table_from_json(doc["table"], max_order, "/table") if "table" in doc else None
    cache = {"max_order": max_order}
    cells = []
    for i, c in enumerate(doc["cells"]):
        where = f"/cells/{i}"
        orbit = _stabilizer(G, c.get("stabilizer"), table, f"{where}/stabilizer", cache)
        bd = [(str(t), gr_from_json(G, x, f"{where}/boundary/{j}/1")) for j, (t, x) in enumerate(c.get("boundary", []))]
        cells.append(Cell.make(c["id"], c["dim"], orbit, bd))
    X = GammaCWComplex(G, tuple(cells), bool(doc.get("connected", False)))
    if check:
        rep = validate(X)
        if not rep.valid:
            raise DomainInputError("; ".join(rep.errors))
    return X


def complex_to_json(X: GammaCWComplex) -> dict:
    G = X.group
    cells = []
    for c in X.cells:
        o = c.orbit
        if o.is_trivial and o.class_id is None:
            stab: Any = "trivial"
        elif isinstance(G, FiniteGroup):
            stab = o.class_id if o.class_id is not None else sorted(o.subgroup)
        else:
            stab = {"order": o.order if is_finite(o.order) else "inf"}
            if o.class_id is not None:
                stab["class"] = o.class_id
        d = {"id": c.id, "dim": c.dim, "stabilizer": stab}
        if c.boundary:
            d["boundary"] = [[t, gr_to_json(G, x)] for t, x in c.boundary]
        cells.append(d)
    return {"format": FORMAT, "group": group_to_json(G), "cells": cells, "connected": X.connected}


# -- modules ------------------------------------------------------------------------


def ring_from_json(v) -> RingTag:
    if isinstance(v, dict):
        return laurent_multi(v["laurent_multi"])
    return {"integers": INTEGERS, "rationals": RATIONALS, "laurent_uni": LAURENT_UNI}[v]


def ring_to_json(r: RingTag):
    return {"laurent_multi": r.nvars} if r.kind == "laurent_multi" else r.kind


def entry_from_json(ring: RingTag, v, where: str):
    try:
        if ring.is_laurent:
            if isinstance(v, (int, str)):
                return ring.coerce(rat(v))
            terms = {}
            for exp, num, den in v:
                e = (exp,) if isinstance(exp, int) else tuple(exp)
                if len(e) != ring.nvars:
                    raise ValueError(f"exponent {exp!r} has the wrong number of variables")
                terms[e] = terms.get(e, 0) + rat([num, den])
            return LaurentPoly(ring.nvars, terms)
        return ring.coerce(rat(v))
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"{where}: {exc}") from None


def entry_to_json(ring: RingTag, x):
    if ring.is_laurent:
        return [[list(e), *enc(c)] for e, c in sorted(x.items())]
    if ring.kind == "integers":
        return x if abs(x) < 2**53 else str(x)
    return enc(x)


def matrix_from_json(ring: RingTag, rows, cols: int, where: str) -> RingMatrix:
    out = []
    for i, r in enumerate(rows):
        if len(r) != cols:
            raise MalformedInput(f"{where}/{i}: row has {len(r)} entries, expected {cols}")
        out.append([entry_from_json(ring, v, f"{where}/{i}/{j}") for j, v in enumerate(r)])
    return RingMatrix.from_rows(ring, out, cols=cols)


def matrix_to_json(M: RingMatrix) -> list:
    return [[entry_to_json(M.ring, x) for x in row] for row in M.entries]


def module_from_json(doc: dict) -> FGModulePresentation:
    check_schema(doc, "module")
    ring = ring_from_json(doc["ring"])
    return FGModulePresentation(ring, matrix_from_json(ring, doc.get("relations", []), doc["generators"], "/relations"))


def module_to_json(M: FGModulePresentation) -> dict:
    return {"format": FORMAT, "ring": ring_to_json(M.ring), "generators": M.generator_count,
            "relations": matrix_to_json(M.relations)}


def submodule_from_json(doc: dict) -> SubmoduleSpec:
    check_schema(doc, "submodule")
    M = module_from_json(doc["module"])
    G = matrix_from_json(M.ring, doc["generators"], M.generator_count, "/generators")
    return SubmoduleSpec(M, G.entries)


def submodule_to_json(K: SubmoduleSpec) -> dict:
    return {"format": FORMAT, "module": module_to_json(K.ambient), "generators": matrix_to_json(K.matrix())}


def chain_from_json(doc: dict) -> DirectedChain:
    check_schema(doc, "chain")
    ring = ring_from_json(doc["ring"])
    mods = doc["modules"]
    if len(doc["maps"]) != len(mods) - 1:
        raise MalformedInput("/maps: a chain of k modules needs k - 1 maps")
    maps = []
    for i, m in enumerate(doc["maps"]):
        if len(m) != mods[i]:
            raise MalformedInput(f"/maps/{i}: expected {mods[i]} rows")
        maps.append(matrix_from_json(ring, m, mods[i + 1], f"/maps/{i}"))
    return DirectedChain(ring, tuple(mods), tuple(maps))


def chain_to_json(C: DirectedChain) -> dict:
    return {"format": FORMAT, "ring": ring_to_json(C.ring), "modules": list(C.modules),
            "maps": [matrix_to_json(f) for f in C.maps]}


# -- Burnside elements, HS matrices ---------------------------------------------------


def burnside_from_json(doc: dict, max_order: int = 120) -> tuple[FiniteSubgroupTable, BurnsideElement]:
    check_schema(doc, "burnside")
    t = table_from_json(doc["table"], max_order, "/table")
    for k in doc["coefficients"]:
        if k not in t.ids:
            raise MalformedInput(f"/coefficients/{k}: unknown class")
    return t, BurnsideElement.of({k: rat(v) for k, v in doc["coefficients"].items()})


def burnside_to_json(t: FiniteSubgroupTable, a: BurnsideElement) -> dict:
    return {"format": FORMAT, "table": table_to_json(t), "coefficients": {k: enc(v) for k, v in a.coefficients}}


def hs_from_json(doc: dict):
    check_schema(doc, "hs")
    G = group_from_json(doc["group"])
    A = [[gr_from_json(G, x, f"/matrix/{i}/{j}") for j, x in enumerate(row)] for i, row in enumerate(doc["matrix"])]
    return G, A


def hs_to_json(G, A) -> dict:
    return {"format": FORMAT, "group": group_to_json(G), "matrix": [[gr_to_json(G, x) for x in row] for row in A]}


# -- reports ------------------------------------------------------------------------


def betti_report_to_json(r, verdict: tuple[bool, list[int]]) -> dict:
    return {"engine": r.engine, "group": r.group, "values": [enc(v) for v in r.values], "d": r.d,
            "integrality": verdict[0], "witnesses": verdict[1]}


def kesten_report_to_json(G, r) -> dict:
    return {
        "generators": [element_to_json(G, s) for s in r.generators],
        "probabilities": [enc(p) for p in r.probabilities],
        "lower_bounds": list(r.lower_bounds),
        "verdict": r.verdict,
        "margin": enc(r.margin),
        "monotone": r.monotone,
    }


__all__ = [
    "DomainInputError",
    "FORMAT",
    "MalformedInput",
    "SCHEMAS",
    "burnside_from_json",
    "burnside_to_json",
    "chain_from_json",
    "chain_to_json",
    "check_schema",
    "complex_from_json",
    "complex_to_json",
    "dumps",
    "group_from_json",
    "group_to_json",
    "hs_from_json",
    "hs_to_json",
    "load_json",
    "module_from_json",
    "module_to_json",
    "submodule_from_json",
    "submodule_to_json",
    "table_from_json",
    "table_to_json",
]
