from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from treespaces.ordfun import (
    OrdFunError,
    OrdStepFunction,
    embed_ordinal,
    ordfun_eval,
    ordfun_lattice_sup,
    ordfun_pos_part,
    ordfun_sup_norm,
    rho_node,
)
from treespaces.ordinal import ONE, OMEGA, ZERO, omega_pow, ordinal
from treespaces.trees import TreeError, canonical, contains, is_leaf
from treespaces.treespace import (
    Element,
    ElementError,
    chi,
    delta_eval,
    lambda_norm,
    lattice_sup,
    pos_part_norm,
)

W = ordinal
ALPHAS = ["0", "1", "2", "w", "w+1", "w^2"]


def test_embed_examples():
    f = embed_ordinal(Q(5, 2) * chi((), 1, canonical(0)))
    assert f.top == ONE and f.pieces == ((ZERO, ONE, Q(5, 2)),)
    assert embed_ordinal(chi((), 1, canonical(1))).pieces == ((ZERO, OMEGA, 1),)
    g = embed_ordinal(chi((), 1, canonical(1)) + chi((2,), 1, canonical(1)))
    assert g.pieces == ((ZERO, W(2), 1), (W(2), W(3), 2), (W(3), OMEGA, 1))
    with pytest.raises(ElementError):
        embed_ordinal(chi(()))


def test_rho_examples():
    for a in ALPHAS:
        assert rho_node((), 1, W(a)) == omega_pow(W(a))
    for n in range(6):
        assert rho_node((n,), 1, ONE) == W(n + 1)
    assert rho_node((0,), 1, W(2)) == OMEGA
    assert rho_node((), 3, ONE, 3) == W("w*3")
    with pytest.raises(TreeError):
        rho_node((0, 0), 1, ONE)
    with pytest.raises(TreeError):
        rho_node((), 4, ONE, 3)


def test_eval_and_norms():
    f = OrdStepFunction(W("w*2"), ((ZERO, OMEGA, Q(-1)), (OMEGA, W("w*2"), Q(2))))
    assert ordfun_sup_norm(f) == 2
    assert [v for _, _, v in ordfun_pos_part(f).pieces] == [0, 2]
    assert ordfun_eval(f, W("w*2")) == 2
    assert ordfun_eval(f, OMEGA) == -1
    assert ordfun_eval(f, W("w+1")) == 2
    assert ordfun_sup_norm(OrdStepFunction.constant(OMEGA, -3)) == 3
    for bad in (ZERO, W("w*2+1")):
        with pytest.raises(OrdFunError):
            ordfun_eval(f, bad)
    with pytest.raises(OrdFunError):
        OrdStepFunction(OMEGA, ((ZERO, W(3), Q(1)),))


def _nodes(schema, depth=3, width=3):
    out, layer = [()], [()]
    for _ in range(depth):
        layer = [s + (n,) for s in layer for n in range(width) if contains(schema, s + (n,))]
        out += layer
    return out


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_duality_on_a_window(a, m):
    schema = canonical(a)
    keys = [(s, i) for i in range(1, m + 1) for s in _nodes(schema)]
    points = {k: rho_node(k[0], k[1], W(a), m) for k in keys}
    assert len(set(points.values())) == len(keys)
    for tk in keys:
        f = embed_ordinal(chi(tk[0], tk[1], schema, m))
        for sk in keys:
            assert f(points[sk]) == delta_eval(chi(tk[0], tk[1], schema, m), *sk)


@pytest.mark.parametrize("a", ALPHAS)
def test_children_points_converge_up_to_parent(a):
    schema = canonical(a)
    for s in _nodes(schema, 2):
        if is_leaf(schema, s):
            continue
        top = rho_node(s, 1, W(a))
        kids = [rho_node(s + (n,), 1, W(a)) for n in range(12)]
        assert all(x < y for x, y in zip(kids, kids[1:]))
        assert all(x < top for x in kids)


def _coeffs(schema, m):
    keys = [(s, i) for i in range(1, m + 1) for s in _nodes(schema, 2)]
    return st.dictionaries(st.sampled_from(keys),
                           st.builds(Q, st.integers(-9, 9), st.integers(1, 3)), max_size=6)


@st.composite
def canonical_elements(draw):
    a = draw(st.sampled_from(ALPHAS))
    m = draw(st.integers(1, 3))
    schema = canonical(a)
    return Element(schema, m, draw(_coeffs(schema, m)))


@given(canonical_elements())
def test_isometry_and_positive_part_norms(x):
    f = embed_ordinal(x)
    assert ordfun_sup_norm(f) == lambda_norm(x)
    assert ordfun_sup_norm(ordfun_pos_part(f)) == pos_part_norm(x)


@given(canonical_elements(), st.data())
def test_lattice_morphism(x, data):
    y = Element(x.schema, x.order, data.draw(_coeffs(x.schema, x.order)))
    assert embed_ordinal(lattice_sup(x, y)) == ordfun_lattice_sup(embed_ordinal(x), embed_ordinal(y))
