import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from p1ropes.forms import LaurentForm, Q
from p1ropes.sheaf import (
    CechClass,
    ExtensionFamily,
    NotABundleError,
    TransitionBundle,
    cech_reduce,
    cohom_dims,
    degeneration_family,
    h1,
)

from conftest import laurent_forms

x = LaurentForm.monomial
ZERO = LaurentForm.zero()


class TestCohomology:
    def test_examples(self):
        assert cohom_dims(3) == (4, 0)
        assert cohom_dims(-3) == (0, 2)
        assert cohom_dims(-1) == (0, 0)

    @given(st.integers(min_value=-15, max_value=15))
    def test_euler(self, d):
        a, b = cohom_dims(d)
        assert a - b == d + 1


class TestCechReduce:
    def test_chart0_coboundary_dropped(self):
        f = LaurentForm.from_pairs([(5, 1), (-2, 1)])
        cls = cech_reduce(f, -4)
        assert cls.coeffs == (Q(0), Q(1), Q(0))

    def test_chart1_coboundary_dropped(self):
        assert cech_reduce(x(-5), -4).is_zero

    def test_zero(self):
        assert cech_reduce(ZERO, -6).is_zero

    @given(laurent_forms(), st.integers(min_value=-8, max_value=1))
    @settings(max_examples=50)
    def test_idempotent_and_dimension(self, f, d):
        cls = cech_reduce(f, d)
        assert len(cls.coeffs) == h1(d)
        again = cech_reduce(cls.as_laurent(), d)
        assert again == cls

    @given(laurent_forms(), laurent_forms(), st.integers(min_value=-8, max_value=1))
    @settings(max_examples=50)
    def test_linear(self, f, g, d):
        lhs = cech_reduce(f + g, d)
        rhs = cech_reduce(f, d) + cech_reduce(g, d)
        assert lhs == rhs


def _unimodular(rng: random.Random, rank: int, ring: str) -> list[list[LaurentForm]]:
    """Random product of elementary matrices over k[x] or k[1/x]."""
    mat = [
        [LaurentForm.constant(1) if i == j else ZERO for j in range(rank)]
        for i in range(rank)
    ]
    for _ in range(4):
        i, j = rng.randrange(rank), rng.randrange(rank)
        if i == j:
            continue
        exp = rng.randint(0, 2) if ring == "poly" else -rng.randint(0, 2)
        factor = x(exp, rng.randint(-2, 2))
        if factor.is_zero:
            continue
        for c in range(rank):
            mat[i][c] = mat[i][c] + factor * mat[j][c]
    return mat


class TestSplitting:
    def test_diagonal_examples(self):
        assert TransitionBundle.diagonal([5, 3]).splitting_type() == (5, 3)
        assert TransitionBundle([[x(5), x(4)], [ZERO, x(3)]]).splitting_type() == (4, 4)
        assert TransitionBundle([[x(7), x(6)], [ZERO, x(1)]]).splitting_type() == (6, 2)

    @given(st.lists(st.integers(min_value=-4, max_value=6), min_size=1, max_size=3))
    @settings(max_examples=30, deadline=None)
    def test_diagonal_property(self, exps):
        got = TransitionBundle.diagonal(exps).splitting_type()
        assert got == tuple(sorted(exps, reverse=True))

    @given(
        st.integers(min_value=-2, max_value=6),
        st.integers(min_value=-2, max_value=6),
        st.integers(min_value=-2, max_value=6),
        st.integers(min_value=-3, max_value=3),
    )
    @settings(max_examples=60, deadline=None)
    def test_triangular_oracle(self, alpha, beta, m, c):
        """[[x^alpha, c x^m], [0, x^beta]] splits by the classical rule: the
        off-diagonal survives only strictly between beta and alpha (m >= alpha
        dies under a polynomial column operation, m <= beta under an inverse-
        variable row operation)."""
        off = x(m, c) if c else ZERO
        got = TransitionBundle([[x(alpha), off], [ZERO, x(beta)]]).splitting_type()
        if c != 0 and beta < m < alpha:
            expected = tuple(sorted((m, alpha + beta - m), reverse=True))
        else:
            expected = tuple(sorted((alpha, beta), reverse=True))
        assert got == expected

    @given(st.data())
    @settings(max_examples=25, deadline=None)
    def test_unimodular_invariance(self, data):
        exps = data.draw(st.lists(st.integers(min_value=-2, max_value=4), min_size=2, max_size=3))
        seed = data.draw(st.integers(min_value=0, max_value=10**6))
        rng = random.Random(seed)
        bundle = TransitionBundle.diagonal(exps)
        left = _unimodular(rng, len(exps), "inv")  # chart-1 frame changes
        right = _unimodular(rng, len(exps), "poly")  # chart-0 frame changes
        twisted = bundle.left_mul(left).right_mul(right)
        assert twisted.splitting_type() == bundle.splitting_type()

    def test_not_a_bundle(self):
        with pytest.raises(NotABundleError):
            TransitionBundle([[x(1) + x(0), ZERO], [ZERO, x(2)]]).splitting_type()

    def test_det_exponent_matches_sum(self):
        b = TransitionBundle([[x(5), x(4)], [ZERO, x(3)]])
        e, unit = b.det_unit_monomial()
        assert e == sum(b.splitting_type()) == 8 and unit == 1

    def test_json_roundtrip(self):
        b = TransitionBundle([[x(5), x(4, Fraction(1, 2))], [ZERO, x(3)]])
        again = TransitionBundle.from_json(b.to_json())
        assert again.matrix == b.matrix


class TestDegeneration:
    def test_examples(self):
        fam = degeneration_family(5, 3)
        assert fam.fiber(0).splitting_type() == (5, 3)
        assert fam.fiber(1).splitting_type() == (4, 4)
        fam = degeneration_family(7, 1)
        assert fam.fiber(0).splitting_type() == (7, 1)
        assert fam.fiber(1).splitting_type() == (6, 2)

    def test_precondition(self):
        with pytest.raises(ValueError):
            degeneration_family(4, 3)

    @given(
        st.integers(min_value=1, max_value=6),
        st.integers(min_value=2, max_value=5),
        st.sampled_from([1, -1, 2, Fraction(1, 2)]),
    )
    @settings(max_examples=20, deadline=None)
    def test_fiber_types(self, b, gap, t):
        a = b + gap
        fam = ExtensionFamily(a, b)
        assert fam.fiber(0).splitting_type() == (a, b)
        assert fam.fiber(t).splitting_type() == (a - 1, b + 1)
