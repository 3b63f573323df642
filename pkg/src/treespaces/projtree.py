"""Projectional-tree data over Cantor step functions.

The host space is the space of step functions on the Cantor space, with
dual elements given by finitely supported signed measures.  A
:class:`ProjTreeData` restricts a projectional tree to a finite trunk: for
every ``(node, copy)`` it carries the vector ``e = T(chi)`` and the
functional ``rho``.  From these the operator ``S`` and the projection
``P = T o S`` are computed exactly.

The full tree is infinite, so only trunk-level facts are checkable.  In
particular the uniform weak* continuity of ``rho`` is a limit statement and
:func:`check_rho_regularity` can only report consistency up to the
trunk's depth; it never certifies it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping

from .cantor import CantorPoint, StepFunction, q_encode, r_encode
from .trees import FULL, TreeSchema, Trunk, is_prefix, trunk_violation
from .treespace import Element, Key

REPORT_HEADER = (
    "finite trunk only: results concern the listed nodes, not the whole tree"
)


class ProjTreeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HostFunctional:
    """A finitely supported signed measure on the Cantor space."""

    atoms: Mapping[CantorPoint, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[CantorPoint, Fraction] = {}
        for x, v in self.atoms.items():
            clean[x] = clean.get(x, 0) + Fraction(v)
        object.__setattr__(self, "atoms", {x: v for x, v in clean.items() if v})

    @classmethod
    def dirac(cls, x: CantorPoint) -> "HostFunctional":
        return cls({x: Fraction(1)})

    def pair(self, f: StepFunction) -> Fraction:
        return sum((v * f(x) for x, v in self.atoms.items()), Fraction(0))

    def norm(self) -> Fraction:
        return sum((abs(v) for v in self.atoms.values()), Fraction(0))

    def is_positive(self) -> bool:
        return all(v > 0 for v in self.atoms.values())

    def __sub__(self, other: "HostFunctional") -> "HostFunctional":
        out = dict(self.atoms)
        for x, v in other.atoms.items():
            out[x] = out.get(x, 0) - v
        return HostFunctional(out)

    def __eq__(self, other):
        if not isinstance(other, HostFunctional):
            return NotImplemented
        return self.atoms == other.atoms


@dataclass(frozen=True)
class ProjTreeData:
    schema: TreeSchema
    order: int
    trunk: Trunk
    vectors: Mapping[Key, StepFunction]
    functionals: Mapping[Key, HostFunctional]

    def __post_init__(self):
        problem = trunk_violation(self.schema, self.trunk.nodes)
        if problem:
            raise ProjTreeError(f"invalid trunk: {problem}")
        for key in self.keys():
            if key not in self.vectors or key not in self.functionals:
                raise ProjTreeError(f"missing data for node {list(key[0])}, copy {key[1]}")

    def keys(self) -> List[Key]:
        return [(s, i) for i in range(1, self.order + 1) for s in self.trunk]

    @property
    def norm_bound(self) -> Fraction:
        """Largest functional norm: the tree's norm restricted to the trunk."""
        return max(self.functionals[k].norm() for k in self.keys())

    def is_positive(self) -> bool:
        return all(self.functionals[k].is_positive() for k in self.keys()) and all(
            v >= 0 for k in self.keys() for v in self.vectors[k].cells().values()
        )


def canonical_projtree(trunk: Trunk, schema: TreeSchema = FULL) -> ProjTreeData:
    """Cylinder indicators ``chi_[Q(s)]`` paired with point masses at ``R(s)``."""
    vectors = {(s, 1): StepFunction({q_encode(s): 1}) for s in trunk}
    functionals = {(s, 1): HostFunctional.dirac(r_encode(s)) for s in trunk}
    return ProjTreeData(schema, 1, trunk, vectors, functionals)


# -- reports --------------------------------------------------------------------

@dataclass
class Report:
    name: str
    violations: List[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    header: str = REPORT_HEADER

    @property
    def ok(self) -> bool:
        return not self.violations


def expected_pairing(s_key: Key, t_key: Key) -> int:
    (s, i), (t, j) = s_key, t_key
    return int(i == j and is_prefix(t, s))


def pairing_matrix(data: ProjTreeData) -> List[List[Fraction]]:
    keys = data.keys()
    return [[data.functionals[sk].pair(data.vectors[tk]) for tk in keys] for sk in keys]


def verify_biorthogonality(data: ProjTreeData) -> Report:
    """Compare ``<rho(s,i), e(t,j)>`` with ``delta(s,i)(chi(t,j))`` on every pair."""
    keys = data.keys()
    matrix = pairing_matrix(data)
    report = Report("biorthogonality", details={"keys": keys, "matrix": matrix})
    for r, sk in enumerate(keys):
        for c, tk in enumerate(keys):
            want = expected_pairing(sk, tk)
            if matrix[r][c] != want:
                report.violations.append(
                    {"s": list(sk[0]), "i": sk[1], "t": list(tk[0]), "j": tk[1],
                     "pairing": matrix[r][c], "expected": Fraction(want)}
                )
    return report


def build_S(data: ProjTreeData, g: StepFunction) -> Element:
    """Coefficients ``<rho(root), g>`` and ``<rho(s) - rho(pred s), g>``."""
    coeffs: Dict[Key, Fraction] = {}
    for s, i in data.keys():
        here = data.functionals[(s, i)].pair(g)
        if s:
            here -= data.functionals[(s[:-1], i)].pair(g)
        coeffs[(s, i)] = here
    return Element(data.schema, data.order, coeffs)


def synthesize(data: ProjTreeData, a: Element) -> StepFunction:
    """``T(a)`` for an element supported in the trunk."""
    out = StepFunction()
    for key, v in a.coeffs.items():
        if key not in data.vectors:
            raise ProjTreeError(f"coefficient outside the trunk at node {list(key[0])}")
        out = out + data.vectors[key] * v
    return out


def project(data: ProjTreeData, g: StepFunction, checked: bool = True) -> StepFunction:
    """``P(g) = sum S(g)[s,i] * e(s,i)`` over the trunk."""
    if checked:
        rep = verify_biorthogonality(data)
        if not rep.ok:
            raise ProjTreeError(
                f"data fails biorthogonality at {len(rep.violations)} pair(s)"
            )
    return synthesize(data, build_S(data, g))


def _no_decay(seq: List[Fraction]) -> bool:
    # at least two observations, ending away from 0 and no lower than it started
    return len(seq) >= 2 and seq[-1] != 0 and seq[-1] >= seq[0]


def check_rho_regularity(data: ProjTreeData, probes: Iterable[StepFunction]) -> Report:
    """Finite-depth evidence for the two continuity conditions on ``rho``.

    For each probe ``g`` and each trunk node ``s`` with trunk children, the
    entry for child ``n`` is ``max |<rho(t) - rho(s), g>|`` over trunk nodes
    ``t`` extending ``s^n``.  For each level ``k`` below the trunk depth the
    depth entry is the same maximum over pairs ``s <= t`` with ``len(s) >= k``.
    A sequence is flagged when it shows no decay: two or more entries, the
    last one nonzero and at least the first.  Nothing here certifies the
    conditions, which are limits over the infinite tree.
    """
    report = Report("rho-regularity")
    sequences = []
    depth = data.trunk.depth()
    note = "inconsistent with decay to 0 up to trunk depth"
    for p, g in enumerate(probes):
        for i in range(1, data.order + 1):
            vals = {s: data.functionals[(s, i)].pair(g) for s in data.trunk}
            for s in data.trunk.non_leaves():
                seq = [max(abs(vals[t] - vals[s]) for t in data.trunk if is_prefix(c, t))
                       for c in data.trunk.children(s)]
                sequences.append({"probe": p, "copy": i, "condition": "children",
                                  "node": list(s), "values": seq})
                if _no_decay(seq):
                    report.violations.append({"probe": p, "copy": i, "condition": "children",
                                              "node": list(s), "values": seq, "note": note})
            seq = [max(abs(vals[t] - vals[s]) for s in data.trunk if len(s) >= k
                       for t in data.trunk if is_prefix(s, t))
                   for k in range(depth)]
            sequences.append({"probe": p, "copy": i, "condition": "depth", "values": seq})
            if _no_decay(seq):
                report.violations.append({"probe": p, "copy": i, "condition": "depth",
                                          "values": seq, "note": note})
    report.details = {"sequences": sequences, "certified": False,
                      "note": "a limit over the infinite tree cannot be certified from a trunk"}
    return report
