"""Step functions on ordinal intervals ``[1, w^a * m]`` and the tree isometry.

A function is a finite list of pieces ``(lo, hi, value)`` meaning the value
on the clopen interval ``(lo, hi]``; the pieces tile ``(0, top]``.

The embedding of a canonical-tree element follows the recursion on the
root rank ``a``:

* ``a = b + 1``: child ``n`` lives on the block ``(w^b*n, w^b*(n+1)]``,
  reached by the shift ``g -> w^b*n + g``;
* ``a`` limit with ``b_n = a[n]``: child 0 lives on ``(0, w^b_0]`` and child
  ``n >= 1`` on ``(w^b_{n-1}, w^b_n]`` via ``g -> w^b_{n-1} + g``;

and the root coefficient is added on the whole interval.  Copy ``i`` of an
order-``m`` element occupies ``(w^a*(i-1), w^a*i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .ordinal import ZERO, Ordinal, add, fundamental_sequence, nat_mul, omega_pow
from .trees import Node, TreeError, canonical, contains
from .treespace import Element, ElementError

Piece = Tuple[Ordinal, Ordinal, Fraction]


class OrdFunError(ValueError):
    pass


def _merge(pieces: List[Piece]) -> Tuple[Piece, ...]:
    out: List[Piece] = []
    for lo, hi, v in pieces:
        if out and out[-1][2] == v:
            out[-1] = (out[-1][0], hi, v)
        else:
            out.append((lo, hi, v))
    return tuple(out)


@dataclass(frozen=True)
class OrdStepFunction:
    top: Ordinal
    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        pieces = [(lo, hi, Fraction(v)) for lo, hi, v in self.pieces]
        cursor = ZERO
        for lo, hi, _ in pieces:
            if lo != cursor or not lo < hi:
                raise OrdFunError("pieces must be nonempty and tile (0, top] in order")
            cursor = hi
        if cursor != self.top:
            raise OrdFunError("pieces must end at top")
        object.__setattr__(self, "pieces", _merge(pieces))

    @classmethod
    def constant(cls, top: Ordinal, c) -> "OrdStepFunction":
        return cls(top, ((ZERO, top, Fraction(c)),))

    def __call__(self, g: Ordinal) -> Fraction:
        return ordfun_eval(self, g)


def ordfun_eval(f: OrdStepFunction, g: Ordinal) -> Fraction:
    if g.is_zero() or f.top < g:
        raise OrdFunError(f"{g} lies outside [1, {f.top}]")
    for lo, hi, v in f.pieces:
        if lo < g <= hi:
            return v
    raise AssertionError("pieces cover (0, top]")


def ordfun_sup_norm(f: OrdStepFunction) -> Fraction:
    return max(abs(v) for _, _, v in f.pieces)


def ordfun_pos_part(f: OrdStepFunction) -> OrdStepFunction:
    return OrdStepFunction(f.top, tuple((lo, hi, max(v, Fraction(0))) for lo, hi, v in f.pieces))


def ordfun_lattice_sup(f: OrdStepFunction, g: OrdStepFunction) -> OrdStepFunction:
    if f.top != g.top:
        raise OrdFunError("domains differ")
    cuts = sorted({hi for _, hi, _ in f.pieces} | {hi for _, hi, _ in g.pieces})
    pieces, lo = [], ZERO
    for hi in cuts:
        pieces.append((lo, hi, max(f(hi), g(hi))))
        lo = hi
    return OrdStepFunction(f.top, tuple(pieces))


# -- the recursion -------------------------------------------------------------

def _block(rank: Ordinal, n: int) -> Tuple[Ordinal, Ordinal]:
    """Offset of child ``n``'s block and the rank of that child."""
    if rank.is_successor():
        beta = rank.predecessor()
        offset = nat_mul(omega_pow(beta), n) if n else ZERO
        return offset, beta
    beta_n = fundamental_sequence(rank, n)
    offset = omega_pow(fundamental_sequence(rank, n - 1)) if n else ZERO
    return offset, beta_n


def _embed_copy(coeffs: Dict[Node, Fraction], rank: Ordinal) -> List[Piece]:
    top = omega_pow(rank)
    root = coeffs.get((), Fraction(0))
    children: Dict[int, Dict[Node, Fraction]] = {}
    for s, v in coeffs.items():
        if s:
            children.setdefault(s[0], {})[s[1:]] = v
    pieces: List[Piece] = []
    cursor = ZERO
    for n in sorted(children):
        offset, beta = _block(rank, n)
        if cursor < offset:
            pieces.append((cursor, offset, Fraction(0)))
        for lo, hi, v in _embed_copy(children[n], beta):
            pieces.append((add(offset, lo), add(offset, hi), v))
        cursor = add(offset, omega_pow(beta))
    if cursor < top:
        pieces.append((cursor, top, Fraction(0)))
    return [(lo, hi, v + root) for lo, hi, v in pieces]


def embed_ordinal(a: Element) -> OrdStepFunction:
    """The lattice isometry from the canonical tree space onto ``C([1, w^a*m])``."""
    if a.schema.is_full:
        raise ElementError("embed_ordinal needs a canonical tree; use cantor.embed")
    rank = a.schema.rank
    unit = omega_pow(rank)
    pieces: List[Piece] = []
    for i in range(1, a.order + 1):
        offset = nat_mul(unit, i - 1) if i > 1 else ZERO
        for lo, hi, v in _embed_copy(a.copy_coeffs(i), rank):
            pieces.append((add(offset, lo), add(offset, hi), v))
    return OrdStepFunction(nat_mul(unit, a.order), tuple(pieces))


def rho_node(s: Sequence[int], i: int, alpha: Ordinal, m: int = 1) -> Ordinal:
    """The point of ``[1, w^alpha*m]`` matched with node ``s`` of copy ``i``."""
    s = tuple(s)
    if not contains(canonical(alpha), s):
        raise TreeError(f"node {list(s)} is not in the canonical tree of rank {alpha}+1")
    if not 1 <= i <= m:
        raise TreeError(f"copy index {i} outside 1..{m}")
    offsets = []
    rank = alpha
    for n in s:
        offset, rank = _block(rank, n)
        offsets.append(offset)
    point = omega_pow(rank)
    for offset in reversed(offsets):
        point = add(offset, point)
    if i > 1:
        point = add(nat_mul(omega_pow(alpha), i - 1), point)
    return point
