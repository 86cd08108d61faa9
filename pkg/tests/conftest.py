from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st

from p1ropes.forms import BinaryForm, LaurentForm

rationals = st.fractions(
    min_value=Fraction(-6), max_value=Fraction(6), max_denominator=4
)

small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def binary_forms(draw, min_degree=0, max_degree=5, allow_zero=True):
    deg = draw(st.integers(min_value=min_degree, max_value=max_degree))
    coeffs = draw(
        st.lists(small_ints, min_size=deg + 1, max_size=deg + 1)
    )
    form = BinaryForm.from_coeffs(deg, coeffs)
    if not allow_zero and form.is_zero:
        coeffs[draw(st.integers(min_value=0, max_value=deg))] = 1
        form = BinaryForm.from_coeffs(deg, coeffs)
    return form


@st.composite
def laurent_forms(draw, min_exp=-6, max_exp=6):
    pairs = draw(
        st.lists(
            st.tuples(st.integers(min_value=min_exp, max_value=max_exp), small_ints),
            max_size=6,
        )
    )
    return LaurentForm.from_pairs(pairs)


def to_sympy(form: BinaryForm, x0, x1):
    """Independent conversion of a binary form to a sympy expression."""
    expr = 0
    if form.is_zero:
        return expr
    for i, c in enumerate(form.coeffs):
        if c != 0:
            expr += c * x0 ** (form.degree - i) * x1**i
    return expr
