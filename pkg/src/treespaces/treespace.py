"""Finitely supported elements of the tree lattice and its m-fold power.

An element assigns a rational coefficient to finitely many pairs
``(node, copy)``; every quantity of interest is expressed through the
*chain sums* ``sum(a[s] for s prefix of t)``.  With finite support the chain
sum at a node outside the downward closure of the support equals the chain
sum at its deepest ancestor inside it, so all suprema over the (infinite)
tree are attained on the closure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Set, Tuple

from .trees import (
    FULL,
    ROOT,
    Node,
    TreeSchema,
    Trunk,
    contains,
    downward_closure,
    is_prefix,
)

Key = Tuple[Node, int]


class ElementError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class Element:
    schema: TreeSchema
    order: int
    coeffs: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ElementError("order must be a positive integer")
        clean: Dict[Key, Fraction] = {}
        for (s, i), v in self.coeffs.items():
            s = tuple(s)
            v = _q(v)
            if not 1 <= i <= self.order:
                raise ElementError(f"copy index {i} outside 1..{self.order}")
            if not contains(self.schema, s):
                raise ElementError(f"node {list(s)} is not in {self.schema}")
            if v:
                clean[(s, i)] = v
        object.__setattr__(self, "coeffs", clean)

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, schema: TreeSchema = FULL, order: int = 1) -> "Element":
        return cls(schema, order, {})

    @classmethod
    def from_nodes(cls, values: Mapping[Node, object], schema: TreeSchema = FULL) -> "Element":
        """Order-1 element from a ``node -> value`` mapping."""
        return cls(schema, 1, {(tuple(s), 1): v for s, v in values.items()})

    def _like(self, coeffs) -> "Element":
        return Element(self.schema, self.order, coeffs)

    # -- vector space -------------------------------------------------
    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.schema != self.schema or other.order != self.order:
            raise ElementError(
                f"schema mismatch: {self.schema}^{self.order} vs {other.schema}^{other.order}"
            )

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._like(out)

    def __neg__(self) -> "Element":
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, c) -> "Element":
        c = _q(c)
        return self._like({k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.schema, self.order, self.coeffs) == (other.schema, other.order, other.coeffs)

    def __hash__(self):
        return hash((self.schema, self.order, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        body = ", ".join(
            f"{list(s)}@{i}: {v}" for (s, i), v in sorted(self.coeffs.items(), key=_key_order)
        )
        return f"Element({self.schema}, m={self.order}, {{{body}}})"

    # -- chain sums ---------------------------------------------------
    def copy_coeffs(self, i: int) -> Dict[Node, Fraction]:
        return {s: v for (s, j), v in self.coeffs.items() if j == i}

    def support(self, i: Optional[int] = None) -> Set[Node]:
        return {s for (s, j) in self.coeffs if i is None or j == i}

    def closure(self, i: Optional[int] = None) -> Trunk:
        return downward_closure(self.support(i))

    def chain_sum(self, t: Node, i: int = 1) -> Fraction:
        """Sum of the copy-``i`` coefficients along the chain from the root to ``t``."""
        t = tuple(t)
        total = Fraction(0)
        for k in range(len(t) + 1):
            total += self.coeffs.get((t[:k], i), 0)
        return total

    def chain_sums(self, i: int, nodes: Iterable[Node]) -> Dict[Node, Fraction]:
        """Chain sums at every node of a hereditary set, computed top-down."""
        out: Dict[Node, Fraction] = {}
        coeffs = self.coeffs
        for t in sorted(nodes, key=len):
            base = out[t[:-1]] if t else Fraction(0)
            v = coeffs.get((t, i))
            out[t] = base + v if v is not None else base
        return out

    def max_depth(self) -> int:
        return max((len(s) for s, _ in self.coeffs), default=0)


def _key_order(item):
    (s, i), _ = item
    return (i, len(s), s)


def chi(s: Sequence[int], i: int = 1, schema: TreeSchema = FULL, order: int = 1) -> Element:
    """The unit vector at ``(s, i)``."""
    s = tuple(s)
    if not contains(schema, s):
        raise ElementError(f"node {list(s)} is not in {schema}")
    return Element(schema, order, {(s, i): Fraction(1)})


def delta_eval(a: Element, s: Sequence[int], i: int = 1) -> Fraction:
    """The coordinate functional at ``(s, i)``: the chain sum of copy ``i`` at ``s``."""
    s = tuple(s)
    if not contains(a.schema, s):
        raise ElementError(f"node {list(s)} is not in {a.schema}")
    if not 1 <= i <= a.order:
        raise ElementError(f"copy index {i} outside 1..{a.order}")
    return a.chain_sum(s, i)


# -- norms -------------------------------------------------------------------

def _closure_sums(a: Element, i: int) -> Dict[Node, Fraction]:
    return a.chain_sums(i, a.closure(i).nodes)


def lambda_norm(a: Element) -> Fraction:
    """Largest absolute chain sum over all nodes and copies."""
    best = Fraction(0)
    for i in range(1, a.order + 1):
        for v in _closure_sums(a, i).values():
            best = max(best, abs(v))
    return best


def pos_part_norm(a: Element) -> Fraction:
    best = Fraction(0)
    for i in range(1, a.order + 1):
        for v in _closure_sums(a, i).values():
            best = max(best, v)
    return best


# -- order and lattice operations ---------------------------------------------

def leq(a: Element, b: Element) -> bool:
    """Chain-sum comparison at every node.

    Checking the joint closure suffices: a node outside it has the chain
    sums of its deepest ancestor inside.
    """
    a._check(b)
    for i in range(1, a.order + 1):
        nodes = downward_closure(a.support(i) | b.support(i)).nodes
        sa, sb = a.chain_sums(i, nodes), b.chain_sums(i, nodes)
        if any(sa[t] > sb[t] for t in nodes):
            return False
    return True


def _from_chain_sums(a: Element, i: int, sums: Mapping[Node, Fraction], out: Dict[Key, Fraction]):
    for t, v in sums.items():
        if t:
            p = sums[t[:-1]]
            if v != p:
                out[(t, i)] = v - p
        elif v:
            out[(t, i)] = v


def _chainmap(a: Element, op: Callable[[Fraction], Fraction]) -> Element:
    """The element whose chain sums are ``op`` applied to those of ``a``."""
    out: Dict[Key, Fraction] = {}
    for i in range(1, a.order + 1):
        sums = _closure_sums(a, i)
        _from_chain_sums(a, i, {t: op(v) for t, v in sums.items()}, out)
    return a._like(out)


def _chainwise(a: Element, b: Element, op: Callable[[Fraction, Fraction], Fraction]) -> Element:
    out: Dict[Key, Fraction] = {}
    for i in range(1, a.order + 1):
        nodes = downward_closure(a.support(i) | b.support(i)).nodes
        sa, sb = a.chain_sums(i, nodes), b.chain_sums(i, nodes)
        _from_chain_sums(a, i, {t: op(sa[t], sb[t]) for t in nodes}, out)
    return a._like(out)


def lattice_sup(a: Element, b: Element) -> Element:
    """Least upper bound: its chain sum at every node is the larger of the two."""
    a._check(b)
    return _chainwise(a, b, max)


def lattice_inf(a: Element, b: Element) -> Element:
    a._check(b)
    return _chainwise(a, b, min)


_ZERO = Fraction(0)


def pos_part(a: Element) -> Element:
    """``sup(a, 0)``: chain sums clipped below at 0."""
    return _chainmap(a, lambda v: v if v > 0 else _ZERO)


def neg_part(a: Element) -> Element:
    return _chainmap(a, lambda v: -v if v < 0 else _ZERO)


def abs_val(a: Element) -> Element:
    """``sup(a+, a-)``, whose chain sums are the absolute chain sums of ``a``."""
    return _chainmap(a, abs)


# -- restriction and trunk approximation ----------------------------------------

Region = Callable[[Node], bool]


def region_nodes(nodes: Iterable[Sequence[int]]) -> Region:
    keep = {tuple(s) for s in nodes}
    return lambda s: s in keep


def region_subtree(s: Sequence[int]) -> Region:
    s = tuple(s)
    return lambda t: is_prefix(s, t)


def region_levels_from(n: int) -> Region:
    return lambda t: len(t) >= n


def restrict(a: Element, region, copies: Optional[Iterable[int]] = None) -> Element:
    """Keep the coefficients on ``region`` (a predicate, Trunk or node set)."""
    if isinstance(region, Trunk):
        region = region_nodes(region.nodes)
    elif not callable(region):
        region = region_nodes(region)
    allowed = None if copies is None else set(copies)
    return a._like(
        {(s, i): v for (s, i), v in a.coeffs.items()
         if region(s) and (allowed is None or i in allowed)}
    )


def trunk_approx(a: Element, eps) -> Trunk:
    """A trunk ``F`` with ``lambda_norm(a - a|F') < eps`` for every trunk ``F' >= F``.

    Per copy: take the least ``n >= 1`` whose deep tail (levels > n) has norm
    below ``eps/4``, then grow the trunk level by level, keeping a child
    only when the restriction of ``a`` to the subtree below it has norm at
    least ``eps/(4n)``.  The union over copies is returned.
    """
    eps = _q(eps)
    if eps <= 0:
        raise ElementError("eps must be positive")
    nodes = {ROOT}
    for i in range(1, a.order + 1):
        ai = restrict(a, lambda s: True, copies=[i])
        n = 1
        while lambda_norm(restrict(ai, lambda t, n=n: len(t) > n)) >= eps / 4:
            n += 1
        threshold = eps / (4 * n)
        support = ai.support()
        layer = [ROOT]
        for _ in range(n):
            nxt = []
            for t in layer:
                kids = sorted({s[: len(t) + 1] for s in support
                               if len(s) > len(t) and s[: len(t)] == t})
                for c in kids:
                    if lambda_norm(restrict(ai, region_subtree(c))) >= threshold:
                        nxt.append(c)
            nodes.update(nxt)
            layer = nxt
    return Trunk(frozenset(nodes))


# -- the sequence identity used by the positive-part norm recursion -----------------

def seq_pos_sup_identity(xs: Sequence) -> Tuple[Fraction, Fraction]:
    """Both sides of ``max_n (x_0+..+x_n)^+ == (x_0 + max_{n>=1} (x_1+..+x_n)^+)^+``.

    The empty partial sum counts as 0 on the right.
    """
    xs = [_q(x) for x in xs]
    if not xs:
        raise ElementError("the sequence must be nonempty")
    # exact integer arithmetic over a common denominator
    den = math.lcm(*(x.denominator for x in xs))
    ns = [x.numerator * (den // x.denominator) for x in xs]
    lhs = max(0, max(accumulate(ns)))
    tail = max(0, max(accumulate(ns[1:]), default=0))
    rhs = max(ns[0] + tail, 0)
    return Fraction(lhs, den), Fraction(rhs, den)
