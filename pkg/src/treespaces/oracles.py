"""Brute-force reference computations, written independently of the main code.

They share no helpers with the modules they check: ordinals below ``w^3``
are coefficient triples, tree elements are plain dicts and step functions
are evaluated point by point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Tuple

Triple = Tuple[int, int, int]  # (c2, c1, c0) stands for w^2*c2 + w*c1 + c0


# -- ordinals below w^3 ---------------------------------------------------------

def derive_interval(g: Triple) -> Triple:
    """The derived set of ``[1, g]``: the limits ``w*d <= g``, i.e. ``[1, floor(g/w)]``."""
    c2, c1, _ = g
    return (0, c2, c1)


def interval_height_and_top(g: Triple) -> Tuple[int, int]:
    """Iterate the derivative on ``[1, g]`` until it is empty.

    Returns the number of nonempty derived sets (the height) and the size
    of the last one, which is finite.
    """
    if g == (0, 0, 0):
        raise ValueError("[1, 0] is empty")
    height = 0
    last = g
    while g != (0, 0, 0):
        height += 1
        last = g
        g = derive_interval(g)
    assert last[0] == last[1] == 0
    return height, last[2]


def point_rank(p: Triple) -> int:
    """How many derivatives keep the point ``p``: divide by ``w`` while possible."""
    if p == (0, 0, 0):
        raise ValueError("0 is not a point of [1, g]")
    r = 0
    while p[2] == 0:
        p = (0, p[0], p[1])
        r += 1
    return r


def triple_add(a: Triple, b: Triple) -> Triple:
    """``a + b`` by adding the generators of ``b`` one at a time."""
    x = list(a)
    for k, c in ((2, b[0]), (1, b[1]), (0, b[2])):
        for _ in range(c):
            # adding w^k clears everything below w^k and bumps that coefficient
            idx = 2 - k
            x[idx] += 1
            for j in range(idx + 1, 3):
                x[j] = 0
    return tuple(x)


def triple_to_text(t: Triple) -> str:
    parts = []
    for exp, c in zip(("w^2", "w", ""), t):
        if c:
            if exp:
                parts.append(exp if c == 1 else f"{exp}*{c}")
            else:
                parts.append(str(c))
    return " + ".join(parts) or "0"


def all_triples(max_coeff: int) -> Iterable[Triple]:
    return product(range(max_coeff + 1), repeat=3)


# -- tree elements -----------------------------------------------------------------

def window(branching: int, depth: int) -> List[tuple]:
    """Every node with entries below ``branching`` and length at most ``depth``."""
    out = [()]
    layer = [()]
    for _ in range(depth):
        layer = [s + (n,) for s in layer for n in range(branching)]
        out.extend(layer)
    return out


def chain_sum(coeffs: Mapping[tuple, Fraction], t: tuple) -> Fraction:
    return sum((coeffs.get(t[:k], Fraction(0)) for k in range(len(t) + 1)), Fraction(0))


def support_window(*supports: Iterable[tuple]) -> List[tuple]:
    """All prefixes of the supports plus one unused child below each, parents first."""
    nodes = {()}
    for sup in supports:
        for s in sup:
            nodes.update(s[:k] for k in range(len(s) + 1))
    fresh = max((max(s) for s in nodes if s), default=0) + 1
    nodes |= {s + (fresh,) for s in list(nodes)}
    return sorted(nodes, key=lambda s: (len(s), s))


def window_sums(coeffs: Mapping[tuple, object], nodes: Iterable[tuple]) -> Dict[tuple, object]:
    """Chain sums at every node of a window listed parents first."""
    out: Dict[tuple, object] = {}
    for t in nodes:
        out[t] = (out[t[:-1]] if t else 0) + coeffs.get(t, 0)
    return out


def _check_window(coeffs: Mapping[tuple, Fraction]) -> List[tuple]:
    b = max((max(s) for s in coeffs if s), default=0) + 2
    d = max(len(s) for s in coeffs) + 1
    return window(b, d)


def brute_norm(coeffs: Mapping[tuple, Fraction]) -> Fraction:
    """Largest absolute chain sum over a window strictly larger than the support."""
    if not coeffs:
        return Fraction(0)
    return max(abs(v) for v in window_sums(coeffs, _check_window(coeffs)).values())


def brute_pos_norm(coeffs: Mapping[tuple, Fraction]) -> Fraction:
    if not coeffs:
        return Fraction(0)
    return max(max(v, Fraction(0)) for v in window_sums(coeffs, _check_window(coeffs)).values())


# -- step functions ------------------------------------------------------------------

def q_word(s: Iterable[int]) -> str:
    return "".join("1" * k + "0" for k in s)


def eval_terms(terms: Mapping[str, Fraction], word: str, tail: int) -> Fraction:
    """Value at the point ``word`` followed by ``tail`` forever."""
    def bit(k):
        return word[k] if k < len(word) else str(tail)
    return sum((v for w, v in terms.items()
                if all(bit(k) == c for k, c in enumerate(w))), Fraction(0))


def sample_points(depth: int) -> List[Tuple[str, int]]:
    """One point in every cylinder of length ``depth`` (both tails)."""
    return [("".join(bits), tail) for bits in product("01", repeat=depth) for tail in (0, 1)]


def brute_sup(terms: Mapping[str, Fraction]) -> Fraction:
    d = max((len(w) for w in terms), default=0)
    return max(abs(eval_terms(terms, w, t)) for w, t in sample_points(d))
