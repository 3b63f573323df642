"""Command-line interface.

Every argument that takes structured data accepts inline JSON or a path to
a JSON file.  Results are printed as JSON; verification commands print a
short summary unless ``--json`` is given.  Exit status: 0 on success, 1
when a verification finds violations, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import cantor, holfin, ordfun, projtree, serialize as ser, suites, trees, treespace
from .ordinal import (
    add,
    cb_rank_of_point,
    fundamental_sequence,
    ms_normal_form,
    nat_mul,
    omega_pow,
    ordinal,
)


class UsageError(ValueError):
    pass


# -- argument helpers ------------------------------------------------------------

def _schema(arg: Optional[str]) -> trees.TreeSchema:
    """``full``, a schema JSON object, or an ordinal naming a canonical tree's root rank."""
    if arg is None or arg == "full":
        return trees.FULL
    text = arg.strip()
    if text.startswith("{"):
        return ser.schema_from_json(ser.load_json_arg(text))
    return trees.canonical(ordinal(text))


def _json(arg: str):
    return ser.load_json_arg(arg)


def _element(arg: str) -> treespace.Element:
    return ser.element_from_json(_json(arg))


def _step(arg: str) -> cantor.StepFunction:
    return ser.step_from_json(_json(arg))


def _int(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise UsageError(f"expected an integer, got {text!r}") from exc
    return n


# -- commands ----------------------------------------------------------------------

def cmd_ordinal(a) -> object:
    op = a.op
    if op == "add":
        return str(add(ordinal(a.args[0]), ordinal(a.args[1])))
    if op == "mul":
        n = _int(a.args[1])
        if n < 1:
            raise UsageError("the multiplier must be a positive integer")
        return str(nat_mul(ordinal(a.args[0]), n))
    if op == "pow":
        return str(omega_pow(ordinal(a.args[0])))
    if op == "fs":
        return str(fundamental_sequence(ordinal(a.args[0]), _int(a.args[1])))
    if op == "cbrank":
        return str(cb_rank_of_point(ordinal(a.args[0])))
    if op == "msform":
        alpha, m, height = ms_normal_form(ordinal(a.args[0]))
        return {"alpha": str(alpha), "m": m, "height": str(height)}
    raise UsageError(f"unknown ordinal operation {op!r}")


def cmd_tree(a) -> object:
    schema = _schema(a.tree)
    if a.op == "rank":
        return str(trees.rank_of_node(schema, ser.node_from_json(_json(a.args[0]))))
    if a.op == "contains":
        return trees.contains(schema, ser.node_from_json(_json(a.args[0])))
    if a.op == "trunk-validate":
        nodes = _json(a.args[0])
        problem = trees.trunk_violation(schema, [ser.node_from_json(s) for s in nodes])
        return Verdict({"name": "trunk", "ok": problem is None,
                        "violations": [] if problem is None else [problem]})
    if a.op == "closure":
        nodes = [ser.node_from_json(s) for s in _json(a.args[0])]
        return ser.trunk_to_json(trees.downward_closure(nodes))
    raise UsageError(f"unknown tree operation {a.op!r}")


def cmd_elem(a) -> object:
    x = _element(a.args[0])
    op = a.op
    if op == "norm":
        return ser.q_to_json(treespace.lambda_norm(x))
    if op == "posnorm":
        return ser.q_to_json(treespace.pos_part_norm(x))
    if op == "pos":
        return ser.element_to_json(treespace.pos_part(x))
    if op == "abs":
        return ser.element_to_json(treespace.abs_val(x))
    if op == "sup":
        return ser.element_to_json(treespace.lattice_sup(x, _element(a.args[1])))
    if op == "leq":
        return treespace.leq(x, _element(a.args[1]))
    if op == "restrict":
        if not a.trunk:
            raise UsageError("restrict needs --trunk")
        return ser.element_to_json(treespace.restrict(x, ser.trunk_from_json(_json(a.trunk), x.schema)))
    if op == "trunk-approx":
        if a.eps is None:
            raise UsageError("trunk-approx needs --eps")
        return ser.trunk_to_json(treespace.trunk_approx(x, ser.q_from_json(a.eps)))
    raise UsageError(f"unknown element operation {op!r}")


def cmd_embed(a) -> object:
    x = _element(a.args[0])
    if a.op == "cantor":
        return ser.step_to_json(cantor.embed(x))
    if a.op == "ordinal":
        return ser.ordstep_to_json(ordfun.embed_ordinal(x))
    raise UsageError(f"unknown embedding {a.op!r}")


def cmd_invert(a) -> object:
    if a.op != "cantor":
        raise UsageError("only 'invert cantor' exists")
    return ser.element_to_json(cantor.inverse_embed(_step(a.args[0])))


def cmd_projtree(a) -> object:
    if a.op == "canonical":
        schema = _schema(a.tree)
        trunk = ser.trunk_from_json(_json(a.trunk or a.args[0]), schema)
        return ser.projtree_to_json(projtree.canonical_projtree(trunk, schema))
    data = ser.projtree_from_json(_json(a.args[0]))
    if a.op == "verify":
        return Verdict(ser.to_plain(projtree.verify_biorthogonality(data)))
    if a.op == "project":
        return ser.step_to_json(projtree.project(data, _step(a.args[1])))
    if a.op == "regularity":
        probes = [ser.step_from_json(p) for p in _json(a.args[1])]
        return Verdict(ser.to_plain(projtree.check_rho_regularity(data, probes)))
    raise UsageError(f"unknown projtree operation {a.op!r}")


def cmd_hol(a) -> object:
    if a.op == "random":
        K, L = _int(a.args[0]), _int(a.args[1])
        return ser.operator_to_json(holfin.random_instance(K, L, a.seed, positive=a.positive))
    op = ser.operator_from_json(_json(a.args[0]))
    if a.op == "check":
        return Verdict(ser.to_plain(holfin.check_hypotheses(op)))
    if a.op == "extract":
        return ser.extraction_to_json(holfin.extract(op))
    if a.op == "verify":
        ex = ser.extraction_from_json(_json(a.args[1])) if len(a.args) > 1 else holfin.extract(op)
        return Verdict(ser.to_plain(holfin.verify_conclusions(op, ex, a.trials, a.seed)))
    raise UsageError(f"unknown hol operation {a.op!r}")


def cmd_selftest(a) -> object:
    if a.suite and a.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {a.suite!r}; choose from {', '.join(suites.SUITES)}")
    results = suites.run_all(a.seed, a.suite)
    return Verdict({"name": "selftest", "ok": all(r.ok for r in results),
                    "violations": [r.line() for r in results if not r.ok],
                    "suites": [{"criterion": r.number, "name": r.name, "ok": r.ok,
                                "checks": r.checks, "failures": r.failures} for r in results]},
                   table=[r.line() for r in results])


class Verdict:
    """A report: exit status 1 when it lists violations."""

    def __init__(self, body: dict, table: Optional[List[str]] = None):
        self.body = body
        self.table = table

    def summary(self) -> str:
        if self.table is not None:
            return "\n".join(self.table)
        lines = [f"{self.body['name']}: {'ok' if self.body['ok'] else 'VIOLATIONS'}"]
        if self.body.get("header"):
            lines.append(f"note: {self.body['header']}")
        lines += [f"  {ser.dumps(v) if not isinstance(v, str) else v}" for v in self.body["violations"]]
        return "\n".join(lines)


# -- parser ---------------------------------------------------------------------------

COMMANDS = {
    "ordinal": (cmd_ordinal, ["add", "mul", "pow", "fs", "cbrank", "msform"]),
    "tree": (cmd_tree, ["rank", "contains", "trunk-validate", "closure"]),
    "elem": (cmd_elem, ["norm", "posnorm", "sup", "pos", "abs", "restrict", "leq", "trunk-approx"]),
    "embed": (cmd_embed, ["cantor", "ordinal"]),
    "invert": (cmd_invert, ["cantor"]),
    "projtree": (cmd_projtree, ["canonical", "verify", "project", "regularity"]),
    "hol": (cmd_hol, ["check", "extract", "verify", "random"]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treespaces", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print reports as JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the result to this file")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, ops) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("op", choices=ops)
        p.add_argument("args", nargs="*")
        p.add_argument("--tree", help="'full', an ordinal root rank, or schema JSON")
        p.add_argument("--trunk", help="trunk JSON (array of nodes) or file")
        p.add_argument("--eps", help="a positive rational such as 1/4")
        p.add_argument("--trials", type=int, default=10)
        p.add_argument("--positive", action="store_true", help="hol random: positive instance")
    p = sub.add_parser("selftest", parents=[common])
    p.add_argument("--suite", help=f"one of: {', '.join(suites.SUITES)}")
    return parser


ARITY = {
    ("ordinal", "add"): 2, ("ordinal", "mul"): 2, ("ordinal", "fs"): 2,
    ("elem", "sup"): 2, ("elem", "leq"): 2, ("projtree", "project"): 2,
    ("projtree", "regularity"): 2, ("hol", "random"): 2,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    a, extra = parser.parse_known_args(argv)
    # positionals given after an option land in extra
    if extra and (a.command == "selftest" or any(x.startswith("--") for x in extra)):
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    if extra:
        a.args = a.args + extra
    try:
        if a.command == "selftest":
            result = cmd_selftest(a)
        else:
            need = ARITY.get((a.command, a.op), 1)
            if a.command == "projtree" and a.op == "canonical" and a.trunk:
                need = 0
            if a.command == "hol" and a.op == "verify":
                need = 1
            if len(a.args) < need:
                raise UsageError(f"{a.command} {a.op} needs {need} argument(s)")
            result = COMMANDS[a.command][0](a)
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(result, Verdict):
        text = ser.dumps(result.body) if a.json else result.summary()
        code = 0 if result.body["ok"] else 1
    else:
        text = ser.dumps(result)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run())
