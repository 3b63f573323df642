"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents, the exponents being ordinals themselves.
The empty tuple is 0.

Text syntax (used by every JSON file and CLI flag)::

    w^(E)*c + ... + k

where ``E`` is again an ordinal in the same syntax.  Exponents that are a
natural number or ``w`` may be written without parentheses.  The printer
emits the shortest of these spellings, so ``parse(str(a)) == a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Tuple, Union

__all__ = [
    "Ordinal",
    "OrdinalError",
    "ZERO",
    "ONE",
    "OMEGA",
    "ordinal",
    "parse_ordinal",
    "compare",
    "add",
    "nat_mul",
    "omega_pow",
    "fundamental_sequence",
    "cb_rank_of_point",
    "ms_normal_form",
]


class OrdinalError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal):
                raise OrdinalError(f"exponent must be an Ordinal, got {exp!r}")
            if not isinstance(coeff, int) or coeff < 1:
                raise OrdinalError(f"coefficient must be a positive integer, got {coeff!r}")
            if prev is not None and not exp < prev:
                raise OrdinalError("exponents must strictly decrease")
            prev = exp

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError("negative ordinal")
        return cls(((ZERO, n),)) if n else ZERO

    # -- ordering -------------------------------------------------------
    def _key_cmp(self, other: "Ordinal") -> int:
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return 1 if e1._key_cmp(e2) > 0 else -1
            if c1 != c2:
                return 1 if c1 > c2 else -1
        return (len(self.terms) > len(other.terms)) - (len(self.terms) < len(other.terms))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key_cmp(other) < 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    # -- classification -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def __int__(self) -> int:
        if not self.is_finite():
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def predecessor(self) -> "Ordinal":
        if not self.is_successor():
            raise OrdinalError(f"{self} has no predecessor")
        head, (exp, c) = self.terms[:-1], self.terms[-1]
        return Ordinal(head + (((exp, c - 1),) if c > 1 else ()))

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise OrdinalError("0 has no leading exponent")
        return self.terms[0][0]

    # -- arithmetic sugar -----------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, self)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return nat_mul(self, n) if n else ZERO

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(_format_term(e, c) for e, c in self.terms)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"


def _coerce(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.of(x)
    return NotImplemented


def _format_term(exp: Ordinal, coeff: int) -> str:
    if exp.is_zero():
        return str(coeff)
    if exp == ONE:
        base = "w"
    elif exp.is_finite() or exp == OMEGA:
        base = f"w^{exp}"
    else:
        base = f"w^({exp})"
    return base if coeff == 1 else f"{base}*{coeff}"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\*)|(\+)|(\()|(\)))")


def _tokens(text: str) -> list:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise OrdinalError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastindex
        out.append(("num", int(m.group(1))) if kind == 1 else ("sym", m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, sym=None):
        tok = self.peek()
        if tok is None or (sym is not None and tok != ("sym", sym)):
            raise OrdinalError(f"malformed ordinal {self.text!r}")
        self.i += 1
        return tok

    def ordinal(self) -> Ordinal:
        terms = [self.term()]
        while self.peek() == ("sym", "+"):
            self.take("+")
            terms.append(self.term())
        if len(terms) == 1 and terms[0] == (ZERO, 0):
            return ZERO
        for _, c in terms:
            if c == 0:
                raise OrdinalError(f"zero coefficient in {self.text!r}")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if not e2 < e1:
                raise OrdinalError(f"not in Cantor normal form: {self.text!r}")
        return Ordinal(tuple(terms))

    def term(self):
        tok = self.take()
        if tok[0] == "num":
            return (ZERO, tok[1])
        if tok != ("sym", "w"):
            raise OrdinalError(f"malformed ordinal {self.text!r}")
        exp = ONE
        if self.peek() == ("sym", "^"):
            self.take("^")
            nxt = self.take()
            if nxt[0] == "num":
                exp = Ordinal.of(nxt[1])
            elif nxt == ("sym", "w"):
                exp = OMEGA
            elif nxt == ("sym", "("):
                exp = self.ordinal()
                self.take(")")
            else:
                raise OrdinalError(f"malformed exponent in {self.text!r}")
        coeff = 1
        if self.peek() == ("sym", "*"):
            self.take("*")
            c = self.take()
            if c[0] != "num":
                raise OrdinalError(f"malformed coefficient in {self.text!r}")
            coeff = c[1]
        return (exp, coeff)


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ``w^(E)*c + ... + k`` syntax; non-CNF input is rejected."""
    p = _Parser(text)
    if not p.toks:
        raise OrdinalError("empty ordinal")
    result = p.ordinal()
    if p.peek() is not None:
        raise OrdinalError(f"trailing input in {text!r}")
    return result


def ordinal(x: Union[str, int, Ordinal]) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of(x)
    return parse_ordinal(x)


# -- operations ------------------------------------------------------------

def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return a._key_cmp(b)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = []
    for exp, c in a.terms:
        if exp > lead:
            kept.append((exp, c))
        elif exp == lead:
            return Ordinal(tuple(kept) + ((lead, c + b.terms[0][1]),) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def nat_mul(a: Ordinal, n: int) -> Ordinal:
    if n < 1:
        raise OrdinalError("multiplier must be a positive integer")
    if a.is_zero():
        return a
    (exp, c), rest = a.terms[0], a.terms[1:]
    return Ordinal(((exp, c * n),) + rest)


def omega_pow(a: Ordinal) -> Ordinal:
    return Ordinal(((a, 1),))


def fundamental_sequence(lam: Ordinal, n: int) -> Ordinal:
    """The n-th member of the fixed cofinal sequence of a limit ordinal.

    ``d + w^(g+1)`` maps to ``d + w^g*(n+1)``; ``d + w^g`` with ``g`` a limit
    maps to ``d + w^(g[n])``.
    """
    if not lam.is_limit():
        raise OrdinalError(f"{lam} is not a limit ordinal")
    if n < 0:
        raise OrdinalError("index must be a natural number")
    exp, c = lam.terms[-1]
    prefix = Ordinal(lam.terms[:-1] + (((exp, c - 1),) if c > 1 else ()))
    if exp.is_successor():
        step = nat_mul(omega_pow(exp.predecessor()), n + 1)
    else:
        step = omega_pow(fundamental_sequence(exp, n))
    return add(prefix, step)


def cb_rank_of_point(g: Ordinal) -> Ordinal:
    """Cantor-Bendixson rank of the point ``g`` in any ordinal interval."""
    if g.is_zero():
        raise OrdinalError("0 is not a point of [1, gamma]")
    return g.terms[-1][0]


def ms_normal_form(g: Ordinal) -> Tuple[Ordinal, int, Ordinal]:
    """``(alpha, m, height)`` with ``[1, g]`` homeomorphic to ``[1, w^alpha*m]``."""
    if g.is_zero():
        raise OrdinalError("[1, 0] is empty")
    alpha, m = g.terms[0]
    return alpha, m, add(alpha, ONE)

