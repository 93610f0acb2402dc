"""Command line interface.

Machine-readable JSON goes to stdout (one object per invocation, with sorted
keys so identical inputs produce byte-identical output); diagnostics go to
stderr. Exit status 0 means success, 1 an input or validation error, and 2 a
principled refusal such as NotBoolean, NotDistributive or LimitExceeded.
The environment variable LATCLONE_LIMIT overrides the default enumeration
limits when no --limit flag is given.
"""

import argparse
import json
import os
import sys

from . import terms
from .equations import EquationSystem, equations_of, solve
from .errors import BadSpec, LatcloneError, Refusal
from .formulas import eval_formula, parse_formula
from .lattice import (
    construct,
    cover_pairs,
    forbidden_sublattice,
    is_boolean,
    is_distributive,
    is_distributive_semilattice,
    join_irreducibles,
)
from .operations import (
    DEFAULT_CLONE_LIMIT,
    OpTable,
    Relation,
    centralizer_slice,
    clone_slice,
    generators,
)
from .qe import eliminate_boolean, eliminate_semilattice
from .sdc import decide_sdc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 by default; bad arguments are input errors here
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise BadSpec(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise BadSpec(f"{path} is not valid JSON: {exc}") from None


def load_structure(path):
    """Read a lattice or semilattice from its JSON description."""
    data = _load_json(path)
    if not isinstance(data, dict) or "elements" not in data:
        raise BadSpec(f"{path} must be an object with an 'elements' key")
    kind = data.get("kind", "lattice")
    return construct(data["elements"],
                     covers=data.get("covers"),
                     meet=data.get("meet"),
                     kind=kind)


def load_relation(path, structure):
    data = _load_json(path)
    if not isinstance(data, dict) or "arity" not in data or "tuples" not in data:
        raise BadSpec(f"{path} must be an object with 'arity' and 'tuples'")
    return Relation(int(data["arity"]), structure.size, data["tuples"])


def relation_json(relation):
    return {"arity": relation.arity, "tuples": [list(t) for t in relation]}


def op_json(op):
    payload = {"arity": op.arity, "values": list(op.values)}
    if op.provenance is not None:
        payload["term"] = terms.render(op.provenance)
    return payload


def _default_limit(args):
    if args.limit is not None:
        return args.limit
    env = os.environ.get("LATCLONE_LIMIT")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise BadSpec(f"LATCLONE_LIMIT must be an integer, got {env!r}") from None
    return DEFAULT_CLONE_LIMIT


def _structure_mode(structure, args):
    mode = getattr(args, "mode", None)
    if mode is not None:
        return mode
    return "lattice" if structure.kind == "lattice" else "semilattice"


def _read_formula_text(args):
    if args.expr is not None and args.file is not None:
        raise BadSpec("give a formula inline or by file, not both")
    if args.expr is not None:
        return args.expr
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as handle:
                return handle.read()
        except OSError as exc:
            raise BadSpec(f"cannot read {args.file}: {exc}") from None
    raise BadSpec("a formula is required (-e or -f)")


def _structure_report(structure):
    payload = {
        "kind": structure.kind,
        "size": structure.size,
        "elements": list(structure.names),
        "bottom": structure.bottom,
        "top": structure.top,
    }
    if structure.kind == "lattice":
        distributive, triple = is_distributive(structure)
        boolean, _ = is_boolean(structure)
        payload["distributive"] = distributive
        payload["boolean"] = boolean
        if triple is not None:
            payload["distributivityCounterexample"] = list(triple)
        found = forbidden_sublattice(structure)
        payload["forbidden"] = (None if found is None
                                else {"kind": found[0], "elements": list(found[1])})
    else:
        payload["distributive"] = is_distributive_semilattice(structure)
    return payload


def cmd_check(args):
    structure = load_structure(args.structure)
    payload = {"valid": True}
    payload.update(_structure_report(structure))
    return payload


def cmd_props(args):
    structure = load_structure(args.structure)
    payload = _structure_report(structure)
    payload["covers"] = [list(p) for p in cover_pairs(structure)]
    if structure.kind == "lattice":
        payload["joinIrreducibles"] = join_irreducibles(structure)
        boolean, booleanstructure = is_boolean(structure)
        if boolean:
            payload["complement"] = list(booleanstructure.complement)
    return payload


def cmd_clone(args):
    structure = load_structure(args.structure)
    mode = _structure_mode(structure, args)
    ops = clone_slice(generators(structure, mode), args.arity, limit=_default_limit(args))
    return {"arity": args.arity, "carrier": structure.size,
            "count": len(ops), "operations": [op_json(op) for op in ops]}


def cmd_centralizer(args):
    structure = load_structure(args.structure)
    mode = _structure_mode(structure, args)
    ops = centralizer_slice(generators(structure, mode), args.arity,
                            limit=_default_limit(args))
    return {"arity": args.arity, "carrier": structure.size,
            "count": len(ops), "operations": [op_json(op) for op in ops]}


def _system_from_args(structure, args):
    if args.system is not None:
        if args.expr is not None or args.file is not None:
            raise BadSpec("give the system as formulas or as raw tables, not both")
        data = _load_json(args.system)
        pairs = [(OpTable(int(data["arity"]), structure.size, lhs),
                  OpTable(int(data["arity"]), structure.size, rhs))
                 for lhs, rhs in data["pairs"]]
        return EquationSystem(int(data["arity"]), structure.size, pairs)
    mode = _structure_mode(structure, args)
    phi = parse_formula(_read_formula_text(args), mode=mode)
    if phi.bound_vars:
        raise BadSpec("an equation system must not contain quantifiers")
    return EquationSystem.from_terms(phi.atoms, phi.free_vars, structure)


def cmd_solve(args):
    structure = load_structure(args.structure)
    system = _system_from_args(structure, args)
    return relation_json(solve(system, structure))


def cmd_eq(args):
    structure = load_structure(args.structure)
    relation = load_relation(args.relation, structure)
    mode = _structure_mode(structure, args)
    theory = equations_of(relation, generators(structure, mode),
                          limit=_default_limit(args))
    blocks = [[op_json(theory.ops[i]) for i in block] for block in theory.blocks]
    equations = [[terms.render(f.provenance), terms.render(g.provenance)]
                 for f, g in theory.induced_system()
                 if f.provenance is not None and g.provenance is not None]
    return {"arity": theory.arity, "sliceSize": len(theory.ops),
            "blocks": blocks, "equations": equations}


def cmd_galois(args):
    structure = load_structure(args.structure)
    relation = load_relation(args.relation, structure)
    mode = _structure_mode(structure, args)
    gens = generators(structure, mode)
    theory = equations_of(relation, gens, limit=_default_limit(args))
    closure = theory.closure()
    solved = closure == relation
    return {
        "closure": relation_json(closure),
        "isSolutionSet": solved,
        "gapTuple": None if solved else list(next(t for t in closure if t not in relation)),
    }


def cmd_eval(args):
    structure = load_structure(args.structure)
    mode = _structure_mode(structure, args)
    phi = parse_formula(_read_formula_text(args), mode=mode)
    return relation_json(eval_formula(phi, structure))


def cmd_qe(args):
    structure = load_structure(args.structure)
    mode = _structure_mode(structure, args)
    phi = parse_formula(_read_formula_text(args), mode=mode)
    if mode == "lattice":
        out = eliminate_boolean(phi, structure)
    else:
        out = eliminate_semilattice(phi, structure)
    return {"formula": out.render(), "freeVars": list(out.free_vars), "mode": mode}


def cmd_sdc(args):
    structure = load_structure(args.structure)
    mode = _structure_mode(structure, args)
    verdict = decide_sdc(structure, mode, verify=args.verify, seed=args.seed,
                         limit=_default_limit(args))
    return verdict.to_json()


def _pretty(payload, verb):
    lines = []
    if verb in ("check", "props"):
        lines.append(f"{payload['kind']} with {payload['size']} elements "
                     f"({', '.join(payload['elements'])})")
        if payload["kind"] == "lattice":
            lines.append(f"distributive: {payload['distributive']}, "
                         f"boolean: {payload['boolean']}")
            if payload.get("forbidden"):
                found = payload["forbidden"]
                lines.append(f"forbidden sublattice: {found['kind']} on {found['elements']}")
        else:
            lines.append(f"distributive: {payload['distributive']}, top: {payload['top']}")
    elif verb in ("clone", "centralizer"):
        lines.append(f"{payload['count']} operations of arity {payload['arity']}")
        for op in payload["operations"]:
            lines.append(f"  {op.get('term', op['values'])}")
    elif verb in ("solve", "eval"):
        lines.append(f"{len(payload['tuples'])} tuples of arity {payload['arity']}")
        for t in payload["tuples"]:
            lines.append(f"  {tuple(t)}")
    elif verb == "eq":
        lines.append(f"slice of {payload['sliceSize']} operations, "
                     f"{len(payload['equations'])} induced equations")
        for lhs, rhs in payload["equations"]:
            lines.append(f"  {lhs} = {rhs}")
    elif verb == "galois":
        lines.append(f"solution set: {payload['isSolutionSet']}")
        if payload.get("gapTuple") is not None:
            lines.append(f"gap tuple: {tuple(payload['gapTuple'])}")
    elif verb == "qe":
        lines.append(payload["formula"])
    elif verb == "sdc":
        lines.append(f"property holds: {payload['holds']} (route: {payload['route']})")
        if payload.get("gapTuple") is not None:
            lines.append(f"gap tuple: {tuple(payload['gapTuple'])}")
    return "\n".join(lines)


def build_parser():
    parser = _Parser(prog="latclone",
                     description="equation systems, clones and quantifier "
                                 "elimination over finite (semi)lattices")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, handler, **kwargs):
        p = sub.add_parser(verb, **kwargs)
        p.add_argument("structure", help="JSON file with the (semi)lattice")
        p.add_argument("--pretty", action="store_true", help="human-readable output")
        p.set_defaults(handler=handler)
        return p

    add("check", cmd_check, help="validate a structure and report its properties")
    add("props", cmd_props, help="extended structural report")

    p = add("clone", cmd_clone, help="n-ary clone slice of the term operations")
    p.add_argument("-n", dest="arity", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)

    p = add("centralizer", cmd_centralizer, help="k-ary centralizer slice")
    p.add_argument("-k", dest="arity", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)

    p = add("solve", cmd_solve, help="solution set of an equation system")
    p.add_argument("-e", dest="expr", default=None, help="inline system in the DSL")
    p.add_argument("-f", dest="file", default=None, help="file with the system")
    p.add_argument("--system", default=None, help="JSON file with raw value tables")
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)

    p = add("eq", cmd_eq, help="equation theory of a tuple set")
    p.add_argument("-T", dest="relation", required=True, help="JSON relation file")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)

    p = add("galois", cmd_galois, help="closure of a tuple set and solution-set verdict")
    p.add_argument("-T", dest="relation", required=True, help="JSON relation file")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)

    p = add("eval", cmd_eval, help="relation defined by a pp formula")
    p.add_argument("-e", dest="expr", default=None)
    p.add_argument("-f", dest="file", default=None)
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)

    p = add("qe", cmd_qe, help="eliminate quantifiers from a pp formula")
    p.add_argument("-e", dest="expr", default=None)
    p.add_argument("-f", dest="file", default=None)
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)

    p = add("sdc", cmd_sdc, help="decide the solution-set closure property")
    p.add_argument("--mode", choices=["lattice", "semilattice"], default=None)
    p.add_argument("--verify", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        payload = args.handler(args)
    except Refusal as exc:
        print(f"latclone: refused: {exc}", file=sys.stderr)
        return 2
    except LatcloneError as exc:
        print(f"latclone: error: {exc}", file=sys.stderr)
        return 1
    if args.pretty:
        print(_pretty(payload, args.verb))
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
