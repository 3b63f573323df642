import pytest
from hypothesis import given, strategies as st

from strategies import nodes
from treespaces.ordinal import ONE, ordinal, add
from treespaces.trees import (
    FULL,
    TreeError,
    canonical,
    check_convergence_witness,
    concat,
    contains,
    downward_closure,
    incomparable,
    is_leaf,
    is_prefix,
    pred,
    rank_of_node,
    shift,
    subtree_schema,
    trunk_violation,
    validate_trunk,
)

RANKS = ["0", "1", "2", "3", "w", "w+1", "w*2", "w^2", "w^w"]


def test_node_operations():
    assert pred((3, 1, 4)) == (3, 1)
    assert shift((3, 1, 4)) == (1, 4)
    assert pred((7,)) == shift((7,)) == ()
    assert is_prefix((1,), (1, 0))
    assert incomparable((1,), (2,))
    assert not incomparable((), (2,))
    assert concat((1,), (2, 3)) == (1, 2, 3)
    for op in (pred, shift):
        with pytest.raises(TreeError):
            op(())


def test_contains_examples():
    assert contains(canonical(0), ())
    assert not contains(canonical(0), (0,))
    assert contains(canonical(2), (5, 7))
    assert not contains(canonical(2), (5, 7, 0))
    assert contains(FULL, (9, 9, 9, 9, 9))


def test_rank_examples():
    for r in RANKS:
        assert rank_of_node(canonical(r), ()) == ordinal(r)
    assert rank_of_node(canonical(2), (0,)) == ONE
    assert rank_of_node(canonical("w"), (3,)) == ordinal(4)
    with pytest.raises(TreeError):
        rank_of_node(FULL, ())
    with pytest.raises(TreeError):
        rank_of_node(canonical(1), (0, 0))


def test_leaves_and_subtrees():
    assert is_leaf(canonical(1), (4,))
    assert not is_leaf(FULL, (4,))
    assert subtree_schema(canonical("w"), (2,)) == canonical(3)
    assert subtree_schema(FULL, (2,)) == FULL


def test_trunk_examples():
    for r in RANKS:
        validate_trunk(canonical(r), [()])
    validate_trunk(FULL, [(), (0,), (0, 2)])
    assert "missing" in trunk_violation(FULL, [(), (0, 2)])
    assert trunk_violation(FULL, [(0,)]) == "missing root []"
    assert trunk_violation(canonical(0), [(), (0,)]) is not None
    with pytest.raises(TreeError):
        validate_trunk(FULL, [(), (0, 2)])


def test_downward_closure_examples():
    assert downward_closure([(1, 1)]).nodes == {(), (1,), (1, 1)}
    assert downward_closure([]).nodes == {()}
    assert downward_closure([(0,), (2, 0)]).nodes == {(), (0,), (2,), (2, 0)}


def test_convergence_witness_examples():
    assert check_convergence_witness((), [(0,), (1,), (2, 5)])
    assert not check_convergence_witness((1,), [(2,), (2,)])
    assert not check_convergence_witness((), [(0,), (0,), (0,)])
    assert check_convergence_witness((1,), [(0,), (1, 0, 3), (1, 4)])
    assert not check_convergence_witness((1,), [])


def _walk_nodes(schema, depth, width):
    out, layer = [()], [()]
    for _ in range(depth):
        layer = [s + (n,) for s in layer for n in range(width) if contains(schema, s + (n,))]
        out += layer
    return out


@pytest.mark.parametrize("r", RANKS)
def test_child_ranks_constant_or_strictly_increasing(r):
    schema = canonical(r)
    for s in _walk_nodes(schema, 3, 4):
        if is_leaf(schema, s):
            continue
        ranks = [rank_of_node(schema, s + (n,)) for n in range(8)]
        here = rank_of_node(schema, s)
        if here.is_successor():
            assert len(set(ranks)) == 1
            assert add(ranks[0], ONE) == here
        else:
            assert all(a < b for a, b in zip(ranks, ranks[1:]))
            assert all(add(x, ONE) < here for x in ranks)


@pytest.mark.parametrize("r", ["3", "w", "w^2", "w^w"])
def test_branches_are_finite(r):
    schema = canonical(r)
    # descending through child 1 must reach a leaf
    s = ()
    for _ in range(200):
        if is_leaf(schema, s):
            break
        s = s + (1,)
    assert is_leaf(schema, s)


@given(st.lists(nodes, max_size=6))
def test_closure_is_a_valid_trunk(ns):
    t = downward_closure(ns)
    assert trunk_violation(FULL, t.nodes) is None
    assert all(tuple(s) in t for s in ns)


@given(nodes, nodes)
def test_prefix_is_a_partial_order(s, t):
    assert is_prefix(s, s)
    if is_prefix(s, t) and is_prefix(t, s):
        assert s == t
    assert incomparable(s, t) == incomparable(t, s)
