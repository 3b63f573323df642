"""Locally constant functions on the Cantor space and the tree isometry.

Words are ``str`` over ``"01"``.  A :class:`StepFunction` is a finite sum of
cylinder indicators ``coeff * chi_[word]``.  Exact sup-norms and lattice
operations go through the *cell form*: the coarsest partition of the
Cantor space into cylinders on which the function is constant.  The cells
are found by splitting a cylinder only while some term word strictly
extends it, and then merging sibling cells with equal values, so two step
functions are equal as functions iff their cell forms coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .trees import ROOT, Node
from .treespace import Element, ElementError, chi, delta_eval

Word = str


def _check_word(w: str) -> str:
    if any(c not in "01" for c in w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


# -- points ------------------------------------------------------------------

@dataclass(frozen=True)
class CantorPoint:
    """An eventually constant 0/1 sequence: ``prefix`` then ``tail`` forever."""

    prefix: str
    tail: int

    def __post_init__(self):
        _check_word(self.prefix)
        if self.tail not in (0, 1):
            raise ValueError("tail must be 0 or 1")
        p = self.prefix.rstrip(str(self.tail))
        object.__setattr__(self, "prefix", p)

    def bit(self, n: int) -> int:
        return int(self.prefix[n]) if n < len(self.prefix) else self.tail

    def starts_with(self, w: str) -> bool:
        p = self.prefix
        if len(w) <= len(p):
            return p.startswith(w)
        return w.startswith(p) and not w[len(p):].strip(str(self.tail))

    def head(self, n: int) -> str:
        p = self.prefix
        return p[:n] if n <= len(p) else p + str(self.tail) * (n - len(p))

    def __str__(self):
        return f"{self.prefix}({self.tail})"


def q_encode(s: Sequence[int]) -> Word:
    """``<s1,...,sn>`` to ``1^s1 0 1^s2 0 ... 1^sn 0``."""
    return "".join("1" * k + "0" for k in s)


def r_encode(s: Sequence[int]) -> CantorPoint:
    """``q_encode(s)`` followed by ones."""
    return CantorPoint(q_encode(s), 1)


def cantor_metric(x: CantorPoint, y: CantorPoint) -> Fraction:
    if x == y:
        return Fraction(0)
    k = 0
    while x.bit(k) == y.bit(k):
        k += 1
    return Fraction(1, 2 ** k)


# -- step functions -----------------------------------------------------------

Cells = Dict[Word, Fraction]


def _cell_tree(u: Word, base: Fraction, pending: List[Tuple[Word, Fraction]]):
    # returns a Fraction when constant on [u], else a (left, right) pair
    if not pending:
        return base
    parts = []
    for b in "01":
        child = u + b
        nb, np_ = base, []
        for w, c in pending:
            if w[len(u)] == b:
                if len(w) == len(child):
                    nb += c
                else:
                    np_.append((w, c))
        parts.append(_cell_tree(child, nb, np_))
    left, right = parts
    if isinstance(left, Fraction) and isinstance(right, Fraction) and left == right:
        return left
    return (left, right)


def _flatten(u: Word, tree, out: Cells):
    if isinstance(tree, Fraction):
        out[u] = tree
    else:
        _flatten(u + "0", tree[0], out)
        _flatten(u + "1", tree[1], out)


@dataclass(frozen=True, eq=False)
class StepFunction:
    terms: Mapping[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, v in self.terms.items():
            v = v if isinstance(v, Fraction) else Fraction(v)
            _check_word(w)
            if v:
                clean[w] = clean.get(w, 0) + v
        object.__setattr__(self, "terms", {w: v for w, v in clean.items() if v})

    @classmethod
    def from_cells(cls, cells: Mapping[Word, Fraction]) -> "StepFunction":
        return cls(dict(cells))

    @classmethod
    def constant(cls, c) -> "StepFunction":
        return cls({"": c})

    def __call__(self, x: CantorPoint) -> Fraction:
        return sum((v for w, v in self.terms.items() if x.starts_with(w)), Fraction(0))

    def depth(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def cells(self) -> Cells:
        base = self.terms.get("", Fraction(0))
        pending = [(w, v) for w, v in self.terms.items() if w]
        out: Cells = {}
        _flatten("", _cell_tree("", base, pending), out)
        return out

    def value_on(self, w: Word) -> Fraction:
        """The value on the cylinder ``[w]``; it must be constant there."""
        for cell, v in self.cells().items():
            if w.startswith(cell):
                return v
        raise ValueError(f"not constant on [{w}]")

    def is_constant_on(self, w: Word, cells: Cells = None) -> bool:
        cells = self.cells() if cells is None else cells
        return any(w.startswith(c) for c in cells)

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "StepFunction") -> "StepFunction":
        out = dict(self.terms)
        for w, v in other.terms.items():
            out[w] = out.get(w, 0) + v
        return StepFunction(out)

    def __neg__(self):
        return StepFunction({w: -v for w, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return StepFunction({w: c * v for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (self - other).cells() == {"": Fraction(0)}

    def __hash__(self):
        return hash(frozenset(self.cells().items()))

    def __repr__(self):
        body = ", ".join(f"[{w}]: {v}" for w, v in sorted(self.terms.items()))
        return f"StepFunction({{{body}}})"


def cell_value(cells: Cells, x: CantorPoint, depth: int) -> Fraction:
    """The value of a cell form at ``x``; ``depth`` bounds the cell lengths."""
    for k in range(depth + 1):
        v = cells.get(x.head(k))
        if v is not None:
            return v
    raise AssertionError("cells must cover the Cantor space")


def step_eval(f: StepFunction, x: CantorPoint) -> Fraction:
    return f(x)


def step_sup_norm(f: StepFunction) -> Fraction:
    return max(abs(v) for v in f.cells().values())


def step_pos_part(f: StepFunction) -> StepFunction:
    return StepFunction.from_cells({w: max(v, Fraction(0)) for w, v in f.cells().items()})


def _pointwise(f: StepFunction, g: StepFunction, op) -> StepFunction:
    pending = [(w, Fraction(1)) for w in set(f.terms) | set(g.terms) if w]
    pieces: Cells = {}
    _flatten("", _split_all("", pending), pieces)
    cells: Cells = {}
    for w in pieces:
        x = CantorPoint(w, 0)
        cells[w] = op(f(x), g(x))
    return StepFunction.from_cells(cells)


def _split_all(u: Word, pending):
    # like _cell_tree but never merges: a partition fine enough for every word
    if not pending:
        return Fraction(0)
    parts = []
    for b in "01":
        child = u + b
        parts.append(_split_all(child, [(w, c) for w, c in pending
                                        if w[len(u)] == b and len(w) > len(child)]))
    return tuple(parts)


def step_lattice_sup(f: StepFunction, g: StepFunction) -> StepFunction:
    return _pointwise(f, g, max)


def step_lattice_inf(f: StepFunction, g: StepFunction) -> StepFunction:
    return _pointwise(f, g, min)


# -- the isometry between the full tree space and C(2^w) -------------------------

def embed(a: Element) -> StepFunction:
    """``sum(a[s] * chi_[Q(s)])`` for an order-1 element over the full tree."""
    if not a.schema.is_full:
        raise ElementError("embed needs the full tree; use ordfun.embed_ordinal")
    if a.order != 1:
        raise ElementError("embed needs order 1")
    return StepFunction({q_encode(s): v for (s, _), v in a.coeffs.items()})


def inverse_embed(f: StepFunction) -> Element:
    """The element with ``a[()] = f(R(()))`` and ``a[s] = f(R(s)) - f(R(pred s))``.

    Only finitely many coefficients can be nonzero: if ``len(Q(pred s)) +
    s[-1]`` reaches the depth ``D`` of ``f`` then ``R(s)`` and ``R(pred s)``
    agree on their first ``D`` bits.  The search also skips the subtree
    below any ``s`` whose cylinder ``[Q(s)]`` carries a constant value,
    since there both points of every deeper pair lie in the same cell.
    """
    cells = f.cells()
    D = f.depth()

    def value_at(s: Node) -> Fraction:
        return cell_value(cells, r_encode(s), D)

    coeffs: Dict[Node, Fraction] = {ROOT: value_at(ROOT)}
    stack = [ROOT]
    while stack:
        p = stack.pop()
        qp = q_encode(p)
        if any(qp.startswith(c) for c in cells):
            continue
        vp = value_at(p)
        for n in range(D - len(qp)):
            s = p + (n,)
            coeffs[s] = value_at(s) - vp
            stack.append(s)
    return Element.from_nodes(coeffs)


def duality_check(s: Node, t: Node) -> Tuple[Fraction, Fraction]:
    """Both sides of ``delta_s(chi_t) == <delta_R(s), T(chi_t)>``."""
    return delta_eval(chi(t), s), step_eval(embed(chi(t)), r_encode(s))

