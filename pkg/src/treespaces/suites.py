"""The nine acceptance suites, shared by the test-suite and ``selftest``.

Every suite is seeded, checks exact rational equalities only, and returns
a :class:`SuiteResult` carrying its time limit in seconds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional

from . import oracles
from .cantor import (
    StepFunction,
    embed,
    inverse_embed,
    step_pos_part,
    step_sup_norm,
)
from .holfin import extract, random_instance, verify_conclusions
from .ordfun import embed_ordinal, ordfun_pos_part, ordfun_sup_norm, rho_node
from .ordinal import (
    ms_normal_form,
    cb_rank_of_point,
    nat_mul,
    omega_pow,
    ordinal,
)
from .projtree import canonical_projtree, expected_pairing, pairing_matrix, project
from .trees import FULL, Trunk, canonical, child_rank, downward_closure, rank_of_node
from .treespace import (
    Element,
    abs_val,
    chi,
    delta_eval,
    lambda_norm,
    lattice_sup,
    leq,
    pos_part,
    pos_part_norm,
    restrict,
    seq_pos_sup_identity,
    trunk_approx,
)


@dataclass
class SuiteResult:
    number: int
    name: str
    limit: float
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and self.elapsed < self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        late = "" if self.elapsed < self.limit else f"; over the {self.limit:g}s limit"
        return (f"[{status}] criterion {self.number} {self.name}: {self.checks} checks, "
                f"{self.elapsed:.2f}s (limit {self.limit:g}s){late}{extra}")

    def expect(self, cond: bool, what: Callable[[], str]):
        """Record one check; ``what`` builds the failure message only when needed."""
        self.checks += 1
        if not cond and len(self.failures) < 20:
            self.failures.append(what())


# -- corpora ---------------------------------------------------------------------

def random_rational(rng: random.Random, num: int = 100, den: int = 10) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_element(rng: random.Random, max_support: int = 12, max_depth: int = 5,
                   max_entry: int = 6) -> Element:
    coeffs = {}
    for _ in range(rng.randint(0, max_support)):
        s = tuple(rng.randint(0, max_entry) for _ in range(rng.randint(0, max_depth)))
        coeffs[s] = random_rational(rng)
    return Element.from_nodes(coeffs)


def random_step(rng: random.Random, max_words: int = 10, max_len: int = 6) -> StepFunction:
    terms: Dict[str, Fraction] = {}
    for _ in range(rng.randint(0, max_words)):
        w = "".join(rng.choice("01") for _ in range(rng.randint(0, max_len)))
        terms[w] = terms.get(w, 0) + random_rational(rng, 20, 4)
    return StepFunction(terms)


def random_canonical_trunk(rng: random.Random, schema, size: int, max_child: int = 4) -> Trunk:
    """Grow a trunk inside ``schema`` by repeatedly adding a child of a random node."""
    nodes = {()}
    for _ in range(size * 4):
        if len(nodes) >= size:
            break
        s = rng.choice(sorted(nodes))
        if schema.is_full or not rank_of_node(schema, s).is_zero():
            nodes.add(s + (rng.randint(0, max_child),))
    return Trunk(frozenset(nodes))


# -- the suites -------------------------------------------------------------------

def suite_cantor_isometry(seed: int = 0) -> SuiteResult:
    res = SuiteResult(1, "Cantor isometry and positive-part norms", 10.0)
    rng = random.Random(seed)
    for _ in range(1000):
        a = random_element(rng)
        f = embed(a)
        res.expect(step_sup_norm(f) == lambda_norm(a), lambda: f"sup norm differs for {a}")
        res.expect(step_sup_norm(step_pos_part(f)) == pos_part_norm(a),
                   lambda: f"positive-part norm differs for {a}")
    return res


def suite_round_trip(seed: int = 0) -> SuiteResult:
    res = SuiteResult(2, "inverse embedding round trip", 10.0)
    rng = random.Random(seed)
    for _ in range(1000):
        a = random_element(rng)
        res.expect(inverse_embed(embed(a)) == a, lambda: f"inverse_embed(embed(a)) != a for {a}")
    points = oracles.sample_points(6)
    for _ in range(300):
        f = random_step(rng)
        back = embed(inverse_embed(f))
        res.expect(back == f, lambda: f"embed(inverse_embed(f)) != f for {f}")
        res.expect(all(oracles.eval_terms(back.terms, w, t) == oracles.eval_terms(f.terms, w, t)
                       for w, t in points), f"pointwise mismatch for {f}")
    return res


def _family(nodes, values=range(-2, 3)):
    """Integer-valued elements on ``nodes`` with their plain coefficient dicts."""
    for vals in product(values, repeat=len(nodes)):
        plain = dict(zip(nodes, vals))
        yield plain, Element.from_nodes(plain)


def _plain(a: Element) -> Dict[tuple, int]:
    out = {}
    for s, v in a.copy_coeffs(1).items():
        if v.denominator != 1:
            return None
        out[s] = v.numerator
    return out


def _sup_characterized(sa, sb, s: Element, nodes) -> bool:
    ps = _plain(s)
    if ps is None:
        return False
    ss = oracles.window_sums(ps, nodes)
    return all(ss[t] == max(sa[t], sb[t]) for t in nodes)


def suite_lattice(seed: int = 0) -> SuiteResult:
    res = SuiteResult(3, "lattice operations against partial sums", 30.0)
    rng = random.Random(seed)
    small = oracles.window(2, 1)           # root, <0>, <1>
    big = oracles.window(2, 2)             # the seven nodes of depth <= 2
    check_small = oracles.window(3, 2)
    check_big = oracles.window(3, 3)
    fam = list(_family(small))
    sums = [oracles.window_sums(p, check_small) for p, _ in fam]
    absolute = [abs_val(a) for _, a in fam]
    norms = [lambda_norm(a) for _, a in fam]
    for x, (_, a) in enumerate(fam):
        for y, (_, b) in enumerate(fam):
            res.expect(_sup_characterized(sums[x], sums[y], lattice_sup(a, b), check_small),
                       lambda: f"sup of {a} and {b}")
            if leq(absolute[x], absolute[y]):
                res.expect(norms[x] <= norms[y], lambda: f"monotonicity for {a}, {b}")
    zero_sums = oracles.window_sums({}, check_big)
    big_fam = list(_family(big))
    for pa, a in big_fam:
        res.expect(_sup_characterized(oracles.window_sums(pa, check_big), zero_sums,
                                      pos_part(a), check_big),
                   lambda: f"positive part of {a}")
    for _ in range(20000):
        (pa, a), (pb, b) = rng.choice(big_fam), rng.choice(big_fam)
        sa, sb = oracles.window_sums(pa, check_big), oracles.window_sums(pb, check_big)
        res.expect(_sup_characterized(sa, sb, lattice_sup(a, b), check_big),
                   lambda: f"sup of {a} and {b}")
        if leq(abs_val(a), abs_val(b)):
            res.expect(lambda_norm(a) <= lambda_norm(b), lambda: f"monotonicity for {a}, {b}")
    return res


def suite_sequence_identity(seed: int = 0) -> SuiteResult:
    res = SuiteResult(4, "positive-part supremum identity for sequences", 1.0)
    rng = random.Random(seed)
    for _ in range(10_000):
        xs = [Fraction(rng.randint(-50, 50), rng.randint(1, 5)) for _ in range(rng.randint(1, 10))]
        lhs, rhs = seq_pos_sup_identity(xs)
        res.expect(lhs == rhs, lambda: f"identity fails on {xs}")
    return res


def suite_trunk_approx(seed: int = 0) -> SuiteResult:
    res = SuiteResult(5, "trunk approximation", 5.0)
    rng = random.Random(seed)
    for _ in range(200):
        a = random_element(rng, max_support=8, max_depth=4, max_entry=4)
        eps = Fraction(rng.randint(1, 40), rng.randint(1, 8))
        F = trunk_approx(a, eps)
        res.expect(lambda_norm(a - restrict(a, F)) < eps, lambda: f"residual too large for {a}, eps={eps}")
        support = sorted(downward_closure(a.support()).nodes)
        for _ in range(20):
            extra = rng.sample(support, rng.randint(0, len(support)))
            extra += [tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 4)))]
            G = downward_closure(set(F.nodes) | set(extra))
            res.expect(lambda_norm(a - restrict(a, G)) < eps,
                       lambda: f"superset residual too large for {a}, eps={eps}")
    return res


ALPHAS = ["0", "1", "2", "w", "w+1", "w^2"]


def suite_ordinal_duality(seed: int = 0) -> SuiteResult:
    res = SuiteResult(6, "ordinal-interval duality", 10.0)
    rng = random.Random(seed)
    for text in ALPHAS:
        alpha = ordinal(text)
        schema = canonical(alpha)
        for m in (1, 2, 3):
            trunk = random_canonical_trunk(rng, schema, rng.randint(1, 15))
            keys = [(s, i) for i in range(1, m + 1) for s in trunk]
            images = {k: embed_ordinal(chi(k[0], k[1], schema, m)) for k in keys}
            points = {k: rho_node(k[0], k[1], alpha, m) for k in keys}
            for sk in keys:
                for tk in keys:
                    lhs = delta_eval(chi(tk[0], tk[1], schema, m), sk[0], sk[1])
                    res.expect(lhs == images[tk](points[sk]),
                               lambda: f"alpha={alpha} m={m} s={sk} t={tk}")
            for _ in range(10):
                a = Element(schema, m, {k: random_rational(rng) for k in keys if rng.random() < 0.6})
                f = embed_ordinal(a)
                res.expect(ordfun_sup_norm(f) == lambda_norm(a), lambda: f"norm alpha={alpha} m={m} {a}")
                res.expect(ordfun_sup_norm(ordfun_pos_part(f)) == pos_part_norm(a),
                           lambda: f"positive-part norm alpha={alpha} m={m} {a}")
    return res


def suite_projection(seed: int = 0) -> SuiteResult:
    res = SuiteResult(7, "canonical projectional trees", 10.0)
    rng = random.Random(seed)
    for _ in range(10):
        trunk = random_canonical_trunk(rng, FULL, rng.randint(1, 20))
        data = canonical_projtree(trunk)
        keys = data.keys()
        matrix = pairing_matrix(data)
        res.expect(all(matrix[r][c] == expected_pairing(sk, tk)
                       for r, sk in enumerate(keys) for c, tk in enumerate(keys)),
                   lambda: f"biorthogonality on {sorted(trunk.nodes)}")
        for k in keys:
            res.expect(project(data, data.vectors[k], checked=False) == data.vectors[k],
                       lambda: f"basis vector {k} not fixed")
        words = [oracles.q_word(s) for s in trunk]
        for _ in range(20):
            g = random_step(rng, max_len=8)
            g = g + StepFunction({rng.choice(words): random_rational(rng, 20, 4)})
            pg = project(data, g, checked=False)
            res.expect(project(data, pg, checked=False) == pg, lambda: f"not idempotent at {g}")
            res.expect(step_sup_norm(pg) <= step_sup_norm(g), lambda: f"norm grows at {g}")
            gp = step_pos_part(g)
            res.expect(min(project(data, gp, checked=False).cells().values()) >= 0,
                       lambda: f"not positive at {gp}")
    return res


def suite_holsztynski(seed: int = 0) -> SuiteResult:
    res = SuiteResult(8, "finite Holsztynski extraction", 5.0)
    rng = random.Random(seed)
    for n in range(100):
        K = rng.randint(1, 8)
        L = rng.randint(1, min(K, 5))
        op = random_instance(K, L, rng.randrange(2**31), positive=(n % 2 == 0))
        try:
            ex = extract(op)
        except ValueError as exc:
            res.expect(False, lambda: f"extract failed on instance {n}: {exc}")
            continue
        rep = verify_conclusions(op, ex, trials=10, seed=n)
        res.expect(rep.ok, lambda: f"instance {n}: {rep.violations[:1]}")
    return res


def suite_ordinal_layer(seed: int = 0) -> SuiteResult:
    res = SuiteResult(9, "ordinal normal forms and ranks", 5.0)
    for t in oracles.all_triples(5):
        if t == (0, 0, 0):
            continue
        g = ordinal(oracles.triple_to_text(t))
        height, m = oracles.interval_height_and_top(t)
        alpha, mm, ht = ms_normal_form(g)
        res.expect(alpha == height - 1 and mm == m and ht == height,
                   lambda: f"normal form of {g}: got ({alpha}, {mm}, {ht})")
        res.expect(cb_rank_of_point(g) == oracles.point_rank(t), lambda: f"rank of {g}")
    for text in ALPHAS:
        alpha = ordinal(text)
        for m in (1, 2, 3):
            got = ms_normal_form(nat_mul(omega_pow(alpha), m))
            res.expect(got[2] == alpha + 1 and got[0] == alpha and got[1] == m,
                       lambda: f"height of [1, w^{alpha}*{m}]")
    return res


SUITES: Dict[str, Callable[[int], SuiteResult]] = {
    "cantor": suite_cantor_isometry,
    "roundtrip": suite_round_trip,
    "lattice": suite_lattice,
    "sequence": suite_sequence_identity,
    "trunk": suite_trunk_approx,
    "duality": suite_ordinal_duality,
    "projection": suite_projection,
    "holsztynski": suite_holsztynski,
    "ordinal": suite_ordinal_layer,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    res = SUITES[name](seed)
    res.elapsed = time.perf_counter() - start
    return res


def run_all(seed: int = 0, only: Optional[str] = None) -> List[SuiteResult]:
    names = [only] if only else list(SUITES)
    return [run_suite(n, seed) for n in names]
