"""Nodes of the full tree of finite sequences and the canonical trees.

Nodes are plain tuples of naturals; ``()`` is the root.  A tree is never
materialized: a :class:`TreeSchema` answers membership and rank queries by
walking from the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from .ordinal import Ordinal, fundamental_sequence, ordinal

Node = Tuple[int, ...]

ROOT: Node = ()


class TreeError(ValueError):
    pass


# -- node operations ----------------------------------------------------------

def is_prefix(s: Node, t: Node) -> bool:
    """``s`` is an initial segment of ``t`` (not necessarily proper)."""
    return len(s) <= len(t) and t[: len(s)] == s


def is_proper_prefix(s: Node, t: Node) -> bool:
    return len(s) < len(t) and t[: len(s)] == s


def incomparable(s: Node, t: Node) -> bool:
    return not is_prefix(s, t) and not is_prefix(t, s)


def concat(s: Node, t: Node) -> Node:
    return tuple(s) + tuple(t)


def pred(s: Node) -> Node:
    if not s:
        raise TreeError("the root has no predecessor")
    return s[:-1]


def shift(s: Node) -> Node:
    if not s:
        raise TreeError("the root has no shift")
    return s[1:]


def prefixes(s: Node):
    """All initial segments of ``s``, root first."""
    return [s[:k] for k in range(len(s) + 1)]


def node(entries: Iterable[int]) -> Node:
    out = tuple(entries)
    for k in out:
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise TreeError(f"node entries must be naturals, got {list(out)!r}")
    return out


# -- schemas -----------------------------------------------------------------

@dataclass(frozen=True)
class TreeSchema:
    """Either the canonical tree of rank ``rank + 1`` or the full tree.

    In the canonical tree a node of successor rank ``b + 1`` has all children
    of rank ``b``; a node of limit rank ``l`` has child ``n`` of rank ``l[n]``.
    """

    kind: str
    rank: Optional[Ordinal] = None

    def __post_init__(self):
        if self.kind == "full":
            if self.rank is not None:
                raise TreeError("the full tree carries no rank")
        elif self.kind == "canonical":
            if not isinstance(self.rank, Ordinal):
                raise TreeError("canonical trees need an ordinal root rank")
        else:
            raise TreeError(f"unknown tree kind {self.kind!r}")

    @property
    def is_full(self) -> bool:
        return self.kind == "full"

    def __str__(self):
        return "full" if self.is_full else f"canonical({self.rank})"


FULL = TreeSchema("full")


def canonical(rank) -> TreeSchema:
    return TreeSchema("canonical", ordinal(rank))


def child_rank(rank: Ordinal, n: int) -> Ordinal:
    """Rank of child ``n`` of a node of rank ``rank`` in a canonical tree."""
    if rank.is_zero():
        raise TreeError("a leaf has no children")
    if rank.is_successor():
        return rank.predecessor()
    return fundamental_sequence(rank, n)


def _walk(schema: TreeSchema, s: Node) -> Optional[Ordinal]:
    r = schema.rank
    for k in s:
        if r.is_zero():
            return None
        r = child_rank(r, k)
    return r


def contains(schema: TreeSchema, s: Node) -> bool:
    if schema.is_full:
        return True
    return _walk(schema, s) is not None


def rank_of_node(schema: TreeSchema, s: Node) -> Ordinal:
    if schema.is_full:
        raise TreeError("the full tree has infinite branches; ranks are undefined")
    r = _walk(schema, s)
    if r is None:
        raise TreeError(f"node {list(s)} is not in {schema}")
    return r


def is_leaf(schema: TreeSchema, s: Node) -> bool:
    if schema.is_full:
        return False
    return rank_of_node(schema, s).is_zero()


def subtree_schema(schema: TreeSchema, s: Node) -> TreeSchema:
    """The schema of ``{t : s^t in tree}``."""
    if schema.is_full:
        return schema
    return TreeSchema("canonical", rank_of_node(schema, s))


# -- trunks ------------------------------------------------------------------

@dataclass(frozen=True)
class Trunk:
    nodes: FrozenSet[Node]

    def __iter__(self):
        return iter(sorted(self.nodes, key=lambda s: (len(s), s)))

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, s):
        return tuple(s) in self.nodes

    def children(self, s: Node):
        return sorted(t for t in self.nodes if len(t) == len(s) + 1 and t[:-1] == s)

    def non_leaves(self):
        return [s for s in self if self.children(s)]

    def depth(self) -> int:
        return max(len(s) for s in self.nodes)


def trunk_violation(schema: TreeSchema, nodes: Iterable[Sequence[int]]) -> Optional[str]:
    """Describe the first reason ``nodes`` fails to be a trunk, or None."""
    ns = {tuple(s) for s in nodes}
    if ROOT not in ns:
        return "missing root []"
    for s in sorted(ns, key=lambda s: (len(s), s)):
        try:
            node(s)
        except TreeError as exc:
            return str(exc)
        if not contains(schema, s):
            return f"node {list(s)} is not in {schema}"
        if s and s[:-1] not in ns:
            return f"node {list(s)} present but its predecessor {list(s[:-1])} is missing"
    return None


def validate_trunk(schema: TreeSchema, nodes: Iterable[Sequence[int]]) -> Trunk:
    nodes = [tuple(s) for s in nodes]
    problem = trunk_violation(schema, nodes)
    if problem:
        raise TreeError(problem)
    return Trunk(frozenset(nodes))


def downward_closure(nodes: Iterable[Sequence[int]]) -> Trunk:
    out = {ROOT}
    for s in nodes:
        s = tuple(s)
        out.update(s[:k] for k in range(len(s) + 1))
    return Trunk(frozenset(out))


def check_convergence_witness(s: Node, ts: Sequence[Node]) -> bool:
    """Finite certificate that ``ts`` converges to ``s`` in the tree topology.

    True iff from some index ``k0`` on every ``t_k`` extends ``s^n_k`` with
    the ``n_k`` strictly increasing, where ``k0`` starts the longest tail of
    terms extending ``s``.
    """
    s = tuple(s)
    ok = [len(t) > len(s) and tuple(t[: len(s)]) == s for t in ts]
    if not ts or not ok[-1]:
        return False
    k0 = len(ts) - 1
    while k0 > 0 and ok[k0 - 1]:
        k0 -= 1
    ns = [ts[k][len(s)] for k in range(k0, len(ts))]
    return all(a < b for a, b in zip(ns, ns[1:]))
