from itertools import product

import pytest
from hypothesis import given, strategies as st

from strategies import limit_ordinals, ordinals, positive_ordinals
from treespaces import oracles
from treespaces.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalError,
    add,
    cb_rank_of_point,
    compare,
    fundamental_sequence,
    ms_normal_form,
    nat_mul,
    omega_pow,
    ordinal,
    parse_ordinal,
)

W = ordinal


def test_compare_examples():
    assert compare(OMEGA, Ordinal.of(3)) == 1
    assert compare(W("w*2+1"), W("w*2+1")) == 0
    assert compare(W("w^w"), W("w^3*9")) == 1


def test_add_examples():
    assert add(W("w+1"), OMEGA) == W("w*2")
    assert add(ZERO, W("w^2+3")) == W("w^2+3")
    assert add(W("w^2*2+w"), W("w^2")) == W("w^2*3")


def test_nat_mul_examples():
    assert nat_mul(OMEGA, 3) == W("w*3")
    assert nat_mul(W("w+1"), 2) == W("w*2+1")
    assert nat_mul(ZERO, 5) == ZERO
    with pytest.raises(OrdinalError):
        nat_mul(OMEGA, 0)


def test_omega_pow_examples():
    assert omega_pow(ZERO) == ONE
    assert omega_pow(ONE) == OMEGA
    assert str(omega_pow(OMEGA)) == "w^w"


def test_fundamental_sequence_examples():
    assert fundamental_sequence(OMEGA, 2) == Ordinal.of(3)
    assert fundamental_sequence(W("w^2"), 3) == W("w*4")
    assert fundamental_sequence(W("w^w"), 1) == W("w^2")
    for bad in (ZERO, ONE, W("w+1")):
        with pytest.raises(OrdinalError):
            fundamental_sequence(bad, 0)


def test_cb_rank_examples():
    assert cb_rank_of_point(Ordinal.of(5)) == ZERO
    assert cb_rank_of_point(W("w^2*3+w*2")) == ONE
    assert cb_rank_of_point(W("w^w")) == OMEGA
    with pytest.raises(OrdinalError):
        cb_rank_of_point(ZERO)
    for a in ("0", "1", "2", "w", "w+1"):
        assert cb_rank_of_point(omega_pow(W(a))) == W(a)


def test_ms_normal_form_examples():
    assert ms_normal_form(W("w+5"))[:2] == (ONE, 1)
    assert ms_normal_form(W("w*2+3"))[:2] == (ONE, 2)
    assert ms_normal_form(Ordinal.of(7)) == (ZERO, 7, ONE)
    with pytest.raises(OrdinalError):
        ms_normal_form(ZERO)


@pytest.mark.parametrize("text", ["0", "7", "w", "w^2", "w^w", "w^(w+1)*3 + w^2 + 4", "w^(w^w)"])
def test_parse_print_round_trip(text):
    g = parse_ordinal(text)
    assert parse_ordinal(str(g)) == g


@pytest.mark.parametrize("bad", ["w+w^2", "w*0", "w^2+w^2", "0+1", "w+", "x", "w^(1", "-1"])
def test_parser_rejects_non_normal_forms(bad):
    with pytest.raises(OrdinalError):
        parse_ordinal(bad)


def _triples(limit):
    return [t for t in product(range(limit + 1), repeat=3)]


def test_add_matches_generator_oracle_below_w_cubed():
    for a, b in product(_triples(3), repeat=2):
        got = add(W(oracles.triple_to_text(a)), W(oracles.triple_to_text(b)))
        assert got == W(oracles.triple_to_text(oracles.triple_add(a, b)))


def test_compare_matches_lexicographic_triples():
    ts = _triples(2)
    for a, b in product(ts, repeat=2):
        want = (a > b) - (a < b)
        assert compare(W(oracles.triple_to_text(a)), W(oracles.triple_to_text(b))) == want


def test_normal_form_and_rank_match_derivative_oracle():
    for t in oracles.all_triples(5):
        if t == (0, 0, 0):
            continue
        g = W(oracles.triple_to_text(t))
        height, m = oracles.interval_height_and_top(t)
        assert ms_normal_form(g) == (Ordinal.of(height - 1), m, Ordinal.of(height))
        assert cb_rank_of_point(g) == Ordinal.of(oracles.point_rank(t))


@given(ordinals, ordinals, ordinals)
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals)
def test_add_identity_and_successor(a):
    assert add(a, ZERO) == a == add(ZERO, a)
    assert compare(add(a, ONE), a) == 1
    assert add(a, ONE).is_successor()


@given(ordinals, ordinals)
def test_add_monotone_in_right_argument(a, b):
    assert compare(add(a, b), a) >= 0
    assert compare(add(a, b), b) >= 0


@given(ordinals, st.integers(1, 5))
def test_nat_mul_is_repeated_addition(a, n):
    total = ZERO
    for _ in range(n):
        total = add(total, a)
    assert nat_mul(a, n) == total


@given(limit_ordinals)
def test_fundamental_sequence_increasing_and_bounded(lam):
    prev = None
    for n in range(51):
        x = fundamental_sequence(lam, n)
        assert x < lam
        if prev is not None:
            assert prev < x
        prev = x


@given(ordinals)
def test_printing_round_trips(a):
    assert parse_ordinal(str(a)) == a
    assert hash(parse_ordinal(str(a))) == hash(a)


@given(positive_ordinals)
def test_normal_form_height(g):
    alpha, m, height = ms_normal_form(g)
    assert height == add(alpha, ONE)
    assert m >= 1
