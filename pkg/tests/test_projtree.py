from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from strategies import nodes, rationals, step_functions
from treespaces.cantor import CantorPoint, StepFunction, embed, q_encode, r_encode, step_pos_part, step_sup_norm
from treespaces.projtree import (
    HostFunctional,
    ProjTreeData,
    ProjTreeError,
    build_S,
    canonical_projtree,
    check_rho_regularity,
    pairing_matrix,
    project,
    verify_biorthogonality,
)
from treespaces.trees import FULL, Trunk, downward_closure
from treespaces.treespace import Element, chi, lambda_norm

THREE = Trunk(frozenset({(), (0,), (1,)}))


def canon(*ns):
    return canonical_projtree(downward_closure(ns))


def test_pairing_matrix_of_canonical_data():
    assert pairing_matrix(canonical_projtree(THREE)) == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]


def test_missing_functional_is_reported():
    data = canonical_projtree(THREE)
    broken = ProjTreeData(FULL, 1, THREE, data.vectors,
                          {**data.functionals, ((), 1): HostFunctional()})
    rep = verify_biorthogonality(broken)
    assert not rep.ok
    v = rep.violations[0]
    assert (v["s"], v["t"], v["pairing"], v["expected"]) == ([], [], 0, 1)
    with pytest.raises(ProjTreeError):
        project(broken, StepFunction.constant(1))


def test_single_node_data_passes():
    root = Trunk(frozenset({()}))
    data = ProjTreeData(FULL, 1, root, {((), 1): StepFunction.constant(1)},
                        {((), 1): HostFunctional.dirac(CantorPoint("", 1))})
    assert verify_biorthogonality(data).ok


def test_data_must_cover_the_trunk():
    with pytest.raises(ProjTreeError):
        ProjTreeData(FULL, 1, THREE, {}, {})


def test_build_S_examples():
    data = canonical_projtree(THREE)
    assert build_S(data, StepFunction()) == Element.zero()
    assert build_S(data, StepFunction({"00": 1})) == Element.zero()
    assert build_S(data, data.vectors[((0,), 1)]) == chi((0,))


def test_project_examples():
    data = canonical_projtree(THREE)
    e0 = data.vectors[((0,), 1)]
    assert project(data, e0) == e0
    assert project(data, StepFunction({"00": 1})) == StepFunction()
    assert project(data, StepFunction.constant(1)) == StepFunction.constant(1)


def test_canonical_examples():
    data = canonical_projtree(Trunk(frozenset({()})))
    assert data.vectors[((), 1)] == StepFunction.constant(1)
    assert data.functionals[((), 1)] == HostFunctional.dirac(CantorPoint("", 1))
    two = canon((0,))
    assert two.functionals[((0,), 1)].pair(two.vectors[((), 1)]) == 1
    assert two.functionals[((), 1)].pair(two.vectors[((0,), 1)]) == 0
    assert canon((0, 3), (2,)).norm_bound == 1
    assert canon((1,)).is_positive()


def test_host_functional():
    mu = HostFunctional({CantorPoint("0", 1): Q(1, 2), CantorPoint("1", 0): Q(-3, 2)})
    assert mu.norm() == 2
    assert not mu.is_positive()
    assert mu.pair(StepFunction({"0": 4, "": 1})) == Q(1, 2) * 5 - Q(3, 2)
    assert (mu - mu).atoms == {}


def test_regularity_examples():
    data = canon((0,), (1,), (2,), (3,), (4,), (5,))
    rep = check_rho_regularity(data, [StepFunction({"110": 1}), StepFunction({"0": 2})])
    assert rep.ok
    assert rep.details["certified"] is False
    assert "finite trunk" in rep.header
    const = ProjTreeData(FULL, 1, data.trunk, data.vectors,
                         {k: HostFunctional.dirac(CantorPoint("", 1)) for k in data.keys()})
    rep = check_rho_regularity(const, [StepFunction({"0": 1})])
    assert rep.ok
    assert all(v == 0 for seq in rep.details["sequences"] for v in seq["values"])
    # every child sits at distance 1 from its parent under the probe
    jumpy = ProjTreeData(FULL, 1, data.trunk, data.vectors,
                         {k: HostFunctional.dirac(CantorPoint("", 1 if not k[0] else 0))
                          for k in data.keys()})
    rep = check_rho_regularity(jumpy, [StepFunction.constant(1) - StepFunction({"1": 1})])
    assert not rep.ok
    assert any(v["condition"] == "children" for v in rep.violations)


trunks = st.lists(nodes, max_size=8).map(downward_closure)


@st.composite
def probes(draw, trunk):
    g = draw(step_functions(max_size=5))
    extra = draw(st.dictionaries(st.sampled_from([q_encode(s) for s in trunk]), rationals, max_size=3))
    return g + StepFunction(extra)


@given(trunks, st.data())
def test_canonical_projection_properties(trunk, data):
    d = canonical_projtree(trunk)
    assert verify_biorthogonality(d).ok
    g = data.draw(probes(trunk))
    pg = project(d, g)
    assert project(d, pg) == pg
    assert step_sup_norm(pg) <= step_sup_norm(g)
    gp = step_pos_part(g)
    assert min(project(d, gp).cells().values()) >= 0
    S = build_S(d, g)
    assert lambda_norm(S) <= d.norm_bound * step_sup_norm(g)
    for t in trunk:
        assert S.chain_sum(t) == d.functionals[(t, 1)].pair(g)


@given(trunks, st.data())
def test_projection_fixes_the_image_of_the_trunk(trunk, data):
    d = canonical_projtree(trunk)
    coeffs = data.draw(st.dictionaries(st.sampled_from(sorted(trunk.nodes)), rationals, max_size=6))
    a = Element.from_nodes(coeffs)
    assert project(d, embed(a)) == embed(a)
    for k in d.keys():
        assert project(d, d.vectors[k]) == d.vectors[k]
