"""Command line entry point.

Exit codes: 0 success, 1 a mathematical precondition failed, 2 malformed
input or usage.  Reports are deterministic JSON (or aligned text) carrying
the command, a SHA-256 digest of the inputs and the result payload.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import __version__
from . import io as jio
from .amenability import DEFAULT_SUPPORT_BOUND, WalkSupportError, kesten_evidence
from .burnside import (
    BurnsideError,
    equivariant_euler,
    example9_table,
    global_character,
    hattori_stallings,
    integrality_conditions,
    l2_euler_of,
    subgroup_lattice,
)
from .extdim import encode_rational, format_value
from .gcw import ComplexError, l2_euler_characteristic, validate
from .groups import FiniteGroup, GroupError, group_by_name
from .l2betti import EngineError, betti, betti_zeroth_report, integrality_verdict
from .linalg import NotAPIDError
from .pid import closure, colimit_dimension, extended_dimension, submodule_dimension, torsion_projective_split

CONFIG_ENV = "L2DIM_CONFIG"

DOMAIN_ERRORS = (jio.DomainInputError, NotAPIDError, EngineError, BurnsideError, GroupError,
                 ComplexError, WalkSupportError)


@dataclass(frozen=True)
class Config:
    max_finite_group_order: int = 120
    walk_support_bound: int = DEFAULT_SUPPORT_BOUND
    output_format: str = "json"
    random_seed: int = 0


def load_config(env: dict | None = None) -> Config:
    """Config from the JSON file named by $L2DIM_CONFIG, defaults otherwise."""
    env = os.environ if env is None else env
    path = env.get(CONFIG_ENV)
    if not path:
        return Config()
    doc = jio.load_json(path)
    if not isinstance(doc, dict):
        raise jio.MalformedInput(f"{path}: config must be a JSON object")
    known = Config.__dataclass_fields__
    extra = set(doc) - set(known) - {"format"}
    if extra:
        raise jio.MalformedInput(f"{path}: unknown config keys {sorted(extra)}")
    cfg = replace(Config(), **{k: v for k, v in doc.items() if k in known})
    for k in ("max_finite_group_order", "walk_support_bound"):
        v = getattr(cfg, k)
        if not isinstance(v, int) or v <= 0:
            raise jio.MalformedInput(f"{path}: {k} must be a positive integer")
    if cfg.output_format not in ("json", "text"):
        raise jio.MalformedInput(f"{path}: output_format must be json or text")
    return cfg


# -- commands ----------------------------------------------------------------------
#
# Each command takes (args, config, path) and returns (payload, text lines).


def _rat_text(x) -> str:
    return format_value(x)


def cmd_dim(args, cfg, path):
    M = jio.module_from_json(jio.load_json(path))
    d = extended_dimension(M)
    TM, prank = torsion_projective_split(M)
    factors = [TM.relations[i, i] for i in range(TM.relations.rows)]
    payload = {
        "ring": jio.ring_to_json(M.ring),
        "dimension": encode_rational(d),
        "torsion_invariant_factors": [jio.entry_to_json(M.ring, f) for f in factors],
        "projective_rank": prank,
    }
    text = [f"dimension = {_rat_text(d)}", f"projective rank = {prank}",
            "torsion = " + (" + ".join(f"R/({f})" for f in factors) or "0")]
    return payload, text


def cmd_closure(args, cfg, path):
    K = jio.submodule_from_json(jio.load_json(path))
    C = closure(K)
    payload = {
        "dimension": encode_rational(submodule_dimension(K)),
        "closure_dimension": encode_rational(submodule_dimension(C)),
        "closure": jio.submodule_to_json(C),
    }
    text = [f"dim K = {_rat_text(submodule_dimension(K))}", f"dim closure = {_rat_text(submodule_dimension(C))}",
            "closure generators:"] + [f"  {list(map(str, g))}" for g in C.generators]
    return payload, text


def cmd_colim(args, cfg, path):
    chain = jio.chain_from_json(jio.load_json(path))
    direct, formula = colimit_dimension(chain)
    payload = {"dimension": encode_rational(direct), "image_formula": encode_rational(formula),
               "agree": direct == formula}
    return payload, [f"dim colim = {_rat_text(direct)}", f"sup inf dim im = {_rat_text(formula)}"]


def _complex(path, cfg):
    return jio.complex_from_json(jio.load_json(path), cfg.max_finite_group_order)


def cmd_betti(args, cfg, path):
    X = _complex(path, cfg)
    r = betti_zeroth_report(X.group, X.connected) if args.engine == "dimzero" else betti(X)
    verdict = integrality_verdict(r)
    payload = jio.betti_report_to_json(r, verdict)
    text = [f"engine: {r.engine}"] + [f"b{p} = {_rat_text(v)}" for p, v in enumerate(r.values)]
    text.append(f"integrality (d = {r.d}): {'pass' if verdict[0] else 'fail at ' + str(verdict[1])}")
    return payload, text


def cmd_euler(args, cfg, path):
    X = _complex(path, cfg)
    chi, m = l2_euler_characteristic(X)
    return ({"chi": encode_rational(chi), "m": encode_rational(m)},
            [f"chi2 = {_rat_text(chi)}", f"m = {_rat_text(m)}"])


def _table(args, cfg, path):
    if path is not None:
        return jio.table_from_json(jio.load_json(path), cfg.max_finite_group_order)
    G = group_by_name(args.group)
    if not isinstance(G, FiniteGroup):
        raise BurnsideError("subgroup tables are computed for finite groups only; supply --table")
    return subgroup_lattice(G, cfg.max_finite_group_order)


def _matrix_text(ids, rows) -> list[str]:
    cells = [[""] + ids] + [[k] + [_rat_text(x) for x in r] for k, r in zip(ids, rows)]
    w = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
    return ["  ".join(c.rjust(w[j]) for j, c in enumerate(row)) for row in cells]


def cmd_burnside(args, cfg, path):
    if args.example9:
        try:
            n, p, r = (int(x) for x in args.example9.split(","))
        except ValueError:
            raise jio.MalformedInput("--example9 takes n,p,r") from None
        ex = example9_table(n, p, r)
        payload = {
            "table": jio.table_to_json(ex.table),
            "coefficients": {k: encode_rational(v) for k, v in ex.euler.coefficients},
            "global_character": [encode_rational(v) for v in ex.character],
            "chi": encode_rational(ex.l2_euler),
            "conditions": list(ex.conditions),
        }
        text = [f"chi^Gamma = {' + '.join(f'({_rat_text(v)})[{k}]' for k, v in ex.euler.coefficients) or '0'}",
                f"global character = ({', '.join(map(_rat_text, ex.character))})",
                f"chi2 = {_rat_text(ex.l2_euler)}", "integrality conditions:"] + [f"  {c}" for c in ex.conditions]
        return payload, text
    t = _table(args, cfg, path)
    A = t.character_matrix()
    payload: dict[str, Any] = {
        "classes": [{"id": c.id, "order": c.order, "name": c.name} for c in t.classes],
        "character_matrix": [[encode_rational(x) for x in row] for row in A],
    }
    text = _matrix_text(t.ids, A)
    if args.complex:
        X = _complex(args.complex, cfg)
        a = equivariant_euler(X, t)
        eta = global_character(t, a)
        payload["equivariant_euler"] = {k: encode_rational(v) for k, v in a.coefficients}
        payload["global_character"] = [encode_rational(v) for v in eta]
        payload["chi"] = encode_rational(l2_euler_of(t, a))
        text += ["", "equivariant Euler characteristic: "
                 + (" + ".join(f"({_rat_text(v)})[{k}]" for k, v in a.coefficients) or "0"),
                 f"global character: ({', '.join(map(_rat_text, eta))})"]
    return payload, text


def cmd_congruence(args, cfg, path):
    t = _table(args, cfg, path)
    try:
        eta = [Fraction(x.strip()) for x in args.eta.split(",")]
    except (ValueError, ZeroDivisionError):
        raise jio.MalformedInput(f"--eta: cannot parse {args.eta!r} as comma-separated rationals") from None
    res = integrality_conditions(t, eta)
    payload = {
        "pass": res.passed,
        "preimage": [encode_rational(x) for x in res.preimage],
        "witnesses": [{"class": k, "position": t.index(k) + 1, "value": encode_rational(v)}
                      for k, v in res.witnesses],
    }
    text = [f"{'pass' if res.passed else 'fail'}: xi = ({', '.join(map(_rat_text, res.preimage))})"]
    text += [f"  xi_{t.index(k) + 1} [{k}] = {_rat_text(v)} is not an integer" for k, v in res.witnesses]
    return payload, text


def cmd_hs(args, cfg, path):
    G, A = jio.hs_from_json(jio.load_json(path))
    f = hattori_stallings(A, G)
    payload = {"class_function": {k: encode_rational(v) for k, v in f.values}}
    return payload, [f"({k}): {_rat_text(v)}" for k, v in f.values] or ["0"]


def cmd_amenable(args, cfg, path):
    G = group_by_name(args.group)
    if args.generators:
        try:
            S = json.loads(args.generators)
        except json.JSONDecodeError:
            raise jio.MalformedInput("--generators must be a JSON list of group elements") from None
        if not isinstance(S, list):
            raise jio.MalformedInput("--generators must be a JSON list of group elements")
        S = [jio.element_from_json(G, s, f"--generators/{i}") for i, s in enumerate(S)]
    else:
        S = G.standard_generators()
    try:
        margin = Fraction(args.margin)
    except (ValueError, ZeroDivisionError):
        raise jio.MalformedInput(f"--margin: cannot parse {args.margin!r}") from None
    if not 0 < margin < 1:
        raise jio.MalformedInput("--margin must lie strictly between 0 and 1")
    if args.steps < 1:
        raise jio.MalformedInput("--steps must be at least 1")
    r = kesten_evidence(G, S, args.steps, margin, cfg.walk_support_bound)
    payload = jio.kesten_report_to_json(G, r)
    text = [f"verdict: {r.verdict}", f"p_{2 * len(r.probabilities)}(e) = {_rat_text(r.probabilities[-1])}",
            f"max lower bound = {r.lower_bounds[-1]}"]
    return payload, text


def cmd_validate(args, cfg, path):
    doc = jio.load_json(path)
    X = jio.complex_from_json(doc, cfg.max_finite_group_order, check=False)
    rep = validate(X)
    payload = {"valid": rep.valid, "errors": rep.errors, "cells": len(X.cells), "dimension": X.dimension}
    text = ["valid" if rep.valid else "invalid"] + [f"  {e}" for e in rep.errors]
    return payload, text


@dataclass(frozen=True)
class Command:
    func: Callable
    input_flag: str | None
    help: str


COMMANDS: dict[str, Command] = {
    "dim": Command(cmd_dim, "module", "extended dimension and torsion split of a module over a PID"),
    "closure": Command(cmd_closure, "submodule", "closure of a submodule"),
    "colim": Command(cmd_colim, "chain", "dimension of the colimit of a directed chain"),
    "betti": Command(cmd_betti, "complex", "L2-Betti numbers"),
    "euler": Command(cmd_euler, "complex", "L2-Euler characteristic and m(X)"),
    "burnside": Command(cmd_burnside, "table", "character matrix, equivariant Euler characteristic, Example 9"),
    "congruence": Command(cmd_congruence, "table", "Burnside integrality conditions for a character vector"),
    "hs": Command(cmd_hs, "matrix", "Hattori-Stallings rank of an idempotent matrix"),
    "amenable": Command(cmd_amenable, None, "return probabilities and Kesten evidence"),
    "validate": Command(cmd_validate, "complex", "validate a complex file"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="l2dim", description="Exact L2-invariants, Burnside rings and random walks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=["json", "text"], default=None, help="output format (default from config, json)")
    p.add_argument("--batch", action="store_true", help="accept several input files and process them in parallel")
    p.add_argument("--output", "-o", help="write the report to this file instead of standard output")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, c in COMMANDS.items():
        sp = sub.add_parser(name, help=c.help, description=c.help)
        if c.input_flag:
            required = name not in ("burnside", "congruence")
            sp.add_argument(f"--{c.input_flag}", nargs="+", required=required, metavar="FILE")
        if name == "betti":
            sp.add_argument("--engine", choices=["auto", "dimzero"], default="auto")
        if name in ("burnside", "congruence"):
            sp.add_argument("--group", help="finite group name, e.g. S3, Z/4, D4, Z/2xZ/2")
        if name == "burnside":
            sp.add_argument("--complex", help="complex file whose equivariant Euler characteristic to evaluate")
            sp.add_argument("--example9", metavar="n,p,r", help="emit the Example 9 model for Z^n x| Z/p")
        if name == "congruence":
            sp.add_argument("--eta", required=True, help="comma-separated character vector, e.g. 1/5,0")
        if name == "amenable":
            sp.add_argument("--group", required=True, help="Z, Z^n, Fk or a finite group name")
            sp.add_argument("--generators", help="JSON list of elements (default: standard symmetric set)")
            sp.add_argument("--steps", type=int, default=30)
            sp.add_argument("--margin", default="1/10")
    return p


def _digest(command: str, argv: list[str], paths: list[str | None]) -> str:
    h = hashlib.sha256()
    h.update(json.dumps([command, argv], sort_keys=True).encode())
    for path in paths:
        if path is not None:
            h.update(Path(path).read_bytes())
    return h.hexdigest()


def _run_one(command: str, args, cfg: Config, path: str | None, echo: list[str]) -> tuple[int, dict, list[str]]:
    try:
        extra = [getattr(args, "complex", None)] if command == "burnside" else []
        digest = _digest(command, echo, [path] + extra)
    except OSError as exc:
        return 2, {"error": f"{exc.filename}: {exc.strerror}", "kind": "malformed"}, [f"error: {exc.strerror}"]
    try:
        payload, text = COMMANDS[command].func(args, cfg, path)
    except jio.MalformedInput as exc:
        return 2, {"error": str(exc), "kind": "malformed", "input": path}, [f"malformed input: {exc}"]
    except DOMAIN_ERRORS as exc:
        return 1, {"error": str(exc), "kind": "domain", "input": path}, [f"error: {exc}"]
    report = {"format": jio.FORMAT, "command": [command] + echo, "input": path, "input_digest": digest,
              "result": payload}
    # an invalid complex is a reported result, but still a failed precondition
    code = 1 if command == "validate" and not payload["valid"] else 0
    return code, report, text


def run(argv: list[str] | None = None, env: dict | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(env)
    except jio.MalformedInput as exc:
        print(f"malformed config: {exc}", file=sys.stderr)
        return 2
    fmt = args.format or cfg.output_format
    cmd = COMMANDS[args.command]
    paths: list[str | None] = getattr(args, cmd.input_flag) if cmd.input_flag else None
    paths = paths or [None]
    if cmd.input_flag == "table" and paths == [None] and not (getattr(args, "group", None) or getattr(args, "example9", None)):
        parser.error(f"{args.command} needs --table or --group")
    if len(paths) > 1 and not args.batch:
        parser.error("several input files need --batch")
    sub_idx = argv.index(args.command)
    echo = argv[sub_idx + 1:]

    if len(paths) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda p: _run_one(args.command, args, cfg, p, echo), paths))
    else:
        results = [_run_one(args.command, args, cfg, paths[0], echo)]

    code = max(r[0] for r in results)
    if fmt == "json":
        docs = [r[1] for r in results]
        out = jio.dumps(docs if args.batch else docs[0])
    else:
        blocks = []
        for (c, _, text), p in zip(results, paths):
            head = [f"== {p}"] if args.batch else []
            blocks.append("\n".join(head + text))
        out = "\n\n".join(blocks) + "\n"
    if code and not args.batch and fmt == "json":
        print(results[0][2][0], file=sys.stderr)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
