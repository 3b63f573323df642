"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from treespaces import Element, StepFunction
from treespaces.ordinal import Ordinal, ZERO

rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))


def _ordinals(depth):
    if depth == 0:
        return st.integers(0, 4).map(Ordinal.of)
    exps = _ordinals(depth - 1)

    @st.composite
    def build(draw):
        es = sorted(set(draw(st.lists(exps, max_size=3))), reverse=True)
        return Ordinal(tuple((e, draw(st.integers(1, 4))) for e in es))

    return build()


ordinals = _ordinals(2)
positive_ordinals = ordinals.filter(lambda g: not g.is_zero())
limit_ordinals = ordinals.filter(lambda g: g.is_limit())

nodes = st.lists(st.integers(0, 4), max_size=4).map(tuple)


@st.composite
def elements(draw, max_size=8):
    coeffs = draw(st.dictionaries(nodes, rationals, max_size=max_size))
    return Element.from_nodes(coeffs)


words = st.text(alphabet="01", max_size=6)


@st.composite
def step_functions(draw, max_size=8):
    return StepFunction(draw(st.dictionaries(words, rationals, max_size=max_size)))


__all__ = ["rationals", "ordinals", "positive_ordinals", "limit_ordinals", "nodes",
           "elements", "words", "step_functions", "ZERO"]
