"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from bihom.poly import Polynomial
from bihom.scalar import Scalar

PARAMS = ("x", "y", "z")

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
exponents = st.tuples(*[st.integers(0, 2)] * len(PARAMS))


@st.composite
def polynomials(draw, max_terms=3, params=PARAMS):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 2)] * len(params)), small_fraction,
                                 max_size=max_terms))
    return Polynomial(params, terms)


@st.composite
def scalars(draw, params=PARAMS, max_terms=3):
    n = draw(polynomials(max_terms=max_terms, params=params))
    d = draw(polynomials(max_terms=2, params=params).filter(lambda p: not p.is_zero()))
    return Scalar(n, d)


nonzero_scalars = scalars().filter(bool)
