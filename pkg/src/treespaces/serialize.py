"""JSON codecs.  Rationals are always ``"p/q"`` strings, never floats."""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, Dict, List

from .cantor import CantorPoint, StepFunction
from .holfin import Extraction, FiniteOperator
from .ordfun import OrdStepFunction
from .ordinal import ordinal
from .projtree import HostFunctional, ProjTreeData, Report
from .trees import FULL, TreeSchema, Trunk, canonical, node, validate_trunk
from .treespace import Element


class FormatError(ValueError):
    """Malformed JSON input."""


def q_to_json(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def q_from_json(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise FormatError(f"rationals must be 'p/q' strings or integers, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {s!r}") from exc


def _get(d: dict, key: str):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"missing field {key!r}")
    return d[key]


# -- nodes, schemas, trunks --------------------------------------------------------

def node_from_json(x) -> tuple:
    if not isinstance(x, list):
        raise FormatError(f"a node is a JSON array, got {x!r}")
    try:
        return node(x)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def schema_to_json(s: TreeSchema) -> dict:
    return {"kind": "full"} if s.is_full else {"kind": "canonical", "rank": str(s.rank)}


def schema_from_json(d) -> TreeSchema:
    kind = _get(d, "kind")
    if kind == "full":
        return FULL
    if kind == "canonical":
        return canonical(ordinal(_get(d, "rank")))
    raise FormatError(f"unknown tree kind {kind!r}")


def trunk_to_json(t: Trunk) -> List[list]:
    return [list(s) for s in t]


def trunk_from_json(x, schema: TreeSchema = FULL) -> Trunk:
    if isinstance(x, dict):
        x = _get(x, "nodes")
    if not isinstance(x, list):
        raise FormatError("a trunk is an array of nodes")
    return validate_trunk(schema, [node_from_json(s) for s in x])


# -- elements ----------------------------------------------------------------------

def element_to_json(a: Element) -> dict:
    items = sorted(a.coeffs.items(), key=lambda kv: (kv[0][1], len(kv[0][0]), kv[0][0]))
    return {"tree": schema_to_json(a.schema), "order": a.order,
            "coeffs": [{"node": list(s), "copy": i, "value": q_to_json(v)}
                       for (s, i), v in items]}


def element_from_json(d) -> Element:
    schema = schema_from_json(_get(d, "tree")) if "tree" in d else FULL
    order = d.get("order", 1)
    coeffs: Dict = {}
    for c in _get(d, "coeffs"):
        key = (node_from_json(_get(c, "node")), c.get("copy", 1))
        coeffs[key] = coeffs.get(key, 0) + q_from_json(_get(c, "value"))
    return Element(schema, order, coeffs)


# -- Cantor side -------------------------------------------------------------------

def point_to_json(x: CantorPoint) -> dict:
    return {"prefix": x.prefix, "tail": x.tail}


def point_from_json(d) -> CantorPoint:
    return CantorPoint(_get(d, "prefix"), _get(d, "tail"))


def step_to_json(f: StepFunction) -> dict:
    return {"terms": [{"word": w, "value": q_to_json(v)}
                      for w, v in sorted(f.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]}


def step_from_json(d) -> StepFunction:
    terms: Dict[str, Fraction] = {}
    for t in _get(d, "terms"):
        w = _get(t, "word")
        terms[w] = terms.get(w, 0) + q_from_json(_get(t, "value"))
    return StepFunction(terms)


def ordstep_to_json(f: OrdStepFunction) -> dict:
    return {"top": str(f.top),
            "pieces": [{"lo": str(lo), "hi": str(hi), "value": q_to_json(v)}
                       for lo, hi, v in f.pieces]}


def ordstep_from_json(d) -> OrdStepFunction:
    pieces = tuple((ordinal(_get(p, "lo")), ordinal(_get(p, "hi")), q_from_json(_get(p, "value")))
                   for p in _get(d, "pieces"))
    return OrdStepFunction(ordinal(_get(d, "top")), pieces)


# -- projectional trees --------------------------------------------------------------

def functional_to_json(mu: HostFunctional) -> dict:
    atoms = sorted(mu.atoms.items(), key=lambda kv: (kv[0].prefix, kv[0].tail))
    return {"atoms": [{"point": point_to_json(x), "mass": q_to_json(v)} for x, v in atoms]}


def functional_from_json(d) -> HostFunctional:
    atoms: Dict[CantorPoint, Fraction] = {}
    for a in _get(d, "atoms"):
        x = point_from_json(_get(a, "point"))
        atoms[x] = atoms.get(x, 0) + q_from_json(_get(a, "mass"))
    return HostFunctional(atoms)


def projtree_to_json(p: ProjTreeData) -> dict:
    entries = [{"node": list(s), "copy": i,
                "vector": step_to_json(p.vectors[(s, i)]),
                "functional": functional_to_json(p.functionals[(s, i)])}
               for s, i in p.keys()]
    return {"tree": schema_to_json(p.schema), "order": p.order,
            "trunk": trunk_to_json(p.trunk), "entries": entries}


def projtree_from_json(d) -> ProjTreeData:
    schema = schema_from_json(d["tree"]) if "tree" in d else FULL
    trunk = trunk_from_json(_get(d, "trunk"), schema)
    vectors, functionals = {}, {}
    for e in _get(d, "entries"):
        key = (node_from_json(_get(e, "node")), e.get("copy", 1))
        vectors[key] = step_from_json(_get(e, "vector"))
        functionals[key] = functional_from_json(_get(e, "functional"))
    return ProjTreeData(schema, d.get("order", 1), trunk, vectors, functionals)


# -- finite operators ----------------------------------------------------------------

def _matrix_to_json(m) -> List[List[str]]:
    return [[q_to_json(v) for v in row] for row in m]


def _matrix_from_json(m) -> List[List[Fraction]]:
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise FormatError("a matrix is an array of arrays")
    return [[q_from_json(v) for v in row] for row in m]


def operator_to_json(op: FiniteOperator) -> dict:
    return {"K": op.K, "L": op.L, "T": _matrix_to_json(op.T), "P": _matrix_to_json(op.P)}


def operator_from_json(d) -> FiniteOperator:
    return FiniteOperator(_get(d, "K"), _get(d, "L"),
                          _matrix_from_json(_get(d, "T")), _matrix_from_json(_get(d, "P")))


def extraction_to_json(ex: Extraction) -> dict:
    return {"F": list(ex.F),
            "rho": {str(y): x for y, x in sorted(ex.rho.items())},
            "sigma": {str(y): s for y, s in sorted(ex.sigma.items())},
            "phi": {str(x): [q_to_json(v) for v in mu] for x, mu in sorted(ex.phi.items())}}


def extraction_from_json(d) -> Extraction:
    return Extraction(tuple(_get(d, "F")),
                      {int(y): x for y, x in _get(d, "rho").items()},
                      {int(y): s for y, s in _get(d, "sigma").items()},
                      {int(x): [q_from_json(v) for v in mu] for x, mu in _get(d, "phi").items()})


# -- generic ---------------------------------------------------------------------------

def to_plain(x: Any) -> Any:
    """Recursively turn report content into JSON-ready values."""
    if isinstance(x, Fraction):
        return q_to_json(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple) and isinstance(x[1], int):
        return {"node": list(x[0]), "copy": x[1]}
    if isinstance(x, (list, tuple)):
        return [to_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, Report):
        return {"name": x.name, "header": x.header, "ok": x.ok,
                "violations": to_plain(x.violations), "details": to_plain(x.details)}
    if hasattr(x, "violations") and hasattr(x, "name"):
        return {"name": x.name, "ok": x.ok, "violations": to_plain(x.violations)}
    return str(x)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_json_arg(arg: str):
    """Parse ``arg`` as inline JSON, or read it as a file path."""
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    else:
        text = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON and not a readable file: {arg[:60]!r}") from exc
