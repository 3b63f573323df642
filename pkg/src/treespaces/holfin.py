"""Holsztyński extraction for isometries between C(L) and C(K), K and L finite.

Points are 0-based indices.  ``T`` is a ``K x L`` rational matrix acting by
``T(f)(y) = row_y . f`` and ``P`` is a ``K x K`` matrix.  For finite compacta
``T`` is a sup-norm isometry exactly when every row has l1-norm at most 1
and every column ``x`` has a row equal to the signed unit vector at ``x``:
the rows bound ``|Tf(y)| <= |f|_inf``, the unit rows attain it, and without a
unit row for ``x`` the function ``1_x`` would be shrunk.

Extraction reads the theorem's data off the matrices: ``F`` is the set of
signed unit rows, ``sigma`` the sign and ``rho`` the column, and
``phi(x) = sigma(y) * row_y(P)`` for any ``y`` with ``rho(y) = x``, which is
``P*((T*)^-1 delta_x)`` written in coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]
Vector = List[Fraction]


class HolFinError(ValueError):
    pass


def _frac_matrix(rows) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def l1(row: Sequence[Fraction]) -> Fraction:
    return sum((abs(v) for v in row), Fraction(0))


def rank(a: Matrix) -> int:
    """Exact rank by fraction-valued Gaussian elimination."""
    m = [list(row) for row in a]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c] / m[r][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        r += 1
    return r


def signed_unit(row: Sequence[Fraction]) -> Optional[Tuple[int, int]]:
    """``(column, sign)`` if ``row`` is ``+-`` a unit vector, else None."""
    nz = [(x, v) for x, v in enumerate(row) if v != 0]
    if len(nz) == 1 and abs(nz[0][1]) == 1:
        x, v = nz[0]
        return x, (1 if v > 0 else -1)
    return None


@dataclass(frozen=True)
class FiniteOperator:
    K: int
    L: int
    T: Matrix
    P: Matrix

    def __post_init__(self):
        if self.K < 1 or self.L < 1:
            raise HolFinError("K and L must be positive")
        T, P = _frac_matrix(self.T), _frac_matrix(self.P)
        if len(T) != self.K or any(len(r) != self.L for r in T):
            raise HolFinError(f"T must have shape {self.K}x{self.L}")
        if len(P) != self.K or any(len(r) != self.K for r in P):
            raise HolFinError(f"P must have shape {self.K}x{self.K}")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "P", P)

    def apply_T(self, f: Sequence[Fraction]) -> Vector:
        return mat_vec(self.T, f)

    def apply_P(self, g: Sequence[Fraction]) -> Vector:
        return mat_vec(self.P, g)


@dataclass
class HolReport:
    name: str
    violations: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_hypotheses(op: FiniteOperator) -> HolReport:
    """Finite isometry criterion for ``T`` and norm-one projection onto its range for ``P``."""
    rep = HolReport("hypotheses")
    for y, row in enumerate(op.T):
        if l1(row) > 1:
            rep.violations.append({"clause": "T row norm", "row": y, "norm": l1(row)})
    units = {signed_unit(row)[0] for row in op.T if signed_unit(row)}
    for x in range(op.L):
        if x not in units:
            shrunk = max(abs(row[x]) for row in op.T)
            rep.violations.append({"clause": "T not isometric", "column": x,
                                   "witness": f"|T(1_{x})| = {shrunk} < 1"})
    if mat_mul(op.P, op.P) != op.P:
        rep.violations.append({"clause": "P not idempotent"})
    if mat_mul(op.P, op.T) != op.T:
        rep.violations.append({"clause": "P does not fix the range of T"})
    norms = [l1(row) for row in op.P]
    if max(norms) != 1:
        rep.violations.append({"clause": "P norm", "norm": max(norms)})
    if rank(op.P) != op.L:
        rep.violations.append({"clause": "range of P differs from range of T",
                               "rank_P": rank(op.P), "L": op.L})
    return rep


@dataclass(frozen=True)
class Extraction:
    F: Tuple[int, ...]
    rho: Dict[int, int]
    sigma: Dict[int, int]
    phi: Dict[int, Vector]

    def fiber(self, x: int) -> List[int]:
        return [y for y in self.F if self.rho[y] == x]


def extract(op: FiniteOperator) -> Extraction:
    """Read ``F``, ``rho``, ``sigma`` and ``phi`` off ``T`` and ``P``.

    Every choice of ``y`` over ``x`` must give the same ``phi(x)``; a
    disagreement means the matrices do not satisfy the hypotheses.
    """
    rep = check_hypotheses(op)
    if not rep.ok:
        raise HolFinError(f"hypotheses fail: {rep.violations[0]['clause']}")
    rho, sigma = {}, {}
    for y, row in enumerate(op.T):
        u = signed_unit(row)
        if u:
            rho[y], sigma[y] = u
    F = tuple(sorted(rho))
    phi: Dict[int, Vector] = {}
    for y in F:
        cand = [sigma[y] * v for v in op.P[y]]
        x = rho[y]
        if x in phi and phi[x] != cand:
            raise HolFinError(f"phi({x}) depends on the choice of point over {x}")
        phi.setdefault(x, cand)
    return Extraction(F, rho, sigma, phi)


def _basis(n: int) -> List[Vector]:
    return [[Fraction(int(k == j)) for k in range(n)] for j in range(n)]


def _random_vec(rng: random.Random, n: int) -> Vector:
    return [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(n)]


def verify_conclusions(op: FiniteOperator, ex: Extraction, trials: int = 10,
                       seed: int = 0) -> HolReport:
    """Exact checks of the support, representation and positivity conclusions."""
    rep = HolReport("conclusions")
    rng = random.Random(seed)
    if set(ex.rho.values()) != set(range(op.L)):
        rep.violations.append({"clause": "rho not surjective"})
    for x, mu in ex.phi.items():
        if l1(mu) != 1:
            rep.violations.append({"clause": "phi norm", "x": x, "norm": l1(mu)})
        outside = [z for z, v in enumerate(mu) if v and ex.rho.get(z) != x]
        if outside:
            rep.violations.append({"clause": "(i)", "x": x, "outside": outside})
    fs = _basis(op.L) + [_random_vec(rng, op.L) for _ in range(trials)]
    for f in fs:
        Tf = op.apply_T(f)
        for y in ex.F:
            rhs = ex.sigma[y] * f[ex.rho[y]]
            if Tf[y] != rhs:
                rep.violations.append({"clause": "(ii)", "f": f, "y": y, "lhs": Tf[y], "rhs": rhs})
    gs = _basis(op.K) + [_random_vec(rng, op.K) for _ in range(trials)]
    for g in gs:
        Pg = op.apply_P(g)
        for y in ex.F:
            mu = ex.phi.get(ex.rho[y])
            rhs = ex.sigma[y] * sum((m * v for m, v in zip(mu, g)), Fraction(0))
            if Pg[y] != rhs:
                rep.violations.append({"clause": "(iii)", "g": g, "y": y, "lhs": Pg[y], "rhs": rhs})
    T_pos = all(v >= 0 for row in op.T for v in row)
    P_pos = all(v >= 0 for row in op.P for v in row)
    if T_pos and any(s != 1 for s in ex.sigma.values()):
        rep.violations.append({"clause": "(a)", "sigma": ex.sigma})
    if T_pos and P_pos:
        for x, mu in ex.phi.items():
            if any(v < 0 for v in mu) or sum(mu) != 1:
                rep.violations.append({"clause": "(b)", "x": x, "phi": mu})
    return rep


def random_instance(K: int, L: int, seed: int, positive: bool = False) -> FiniteOperator:
    """A valid operator built as ``T`` composed with an averaging left inverse.

    ``L`` rows of ``T`` are a signed injection of ``L`` into ``K``; each
    remaining row is either another signed unit row or a row of l1-norm at
    most 1.  With ``mu_x`` a signed convex combination of the point masses
    over ``x``, the map ``S(g)(x) = <mu_x, g>`` satisfies ``S T = id``, so
    ``P = T S`` is a norm-one projection onto the range of ``T``.
    """
    if not K >= L >= 1:
        raise HolFinError("need K >= L >= 1")
    rng = random.Random(seed)

    def sign():
        return 1 if positive else rng.choice((1, -1))

    rows = rng.sample(range(K), L)
    rho: Dict[int, int] = {y: x for x, y in enumerate(rows)}
    sigma: Dict[int, int] = {y: sign() for y in rows}
    T: Matrix = [[Fraction(0)] * L for _ in range(K)]
    for y in range(K):
        if y not in rho and rng.random() < 0.4:
            rho[y], sigma[y] = rng.randrange(L), sign()
        if y in rho:
            T[y][rho[y]] = Fraction(sigma[y])
        else:
            w = [rng.randint(0, 3) for _ in range(L)]
            total = sum(w) + rng.randint(0, 2)
            if total:
                T[y] = [Fraction(sign() * v, total) for v in w]
    S: Matrix = [[Fraction(0)] * K for _ in range(L)]
    for x in range(L):
        fib = [y for y in sorted(rho) if rho[y] == x]
        w = [rng.randint(1, 3) for _ in fib]
        for y, v in zip(fib, w):
            S[x][y] = Fraction(sigma[y] * v, sum(w))
    return FiniteOperator(K, L, T, mat_mul(T, S))
