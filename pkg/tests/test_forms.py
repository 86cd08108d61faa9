from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
import hypothesis.strategies as st

from p1ropes.forms import (
    BinaryForm,
    LaurentForm,
    Q,
    RatMatrix,
    fraction_rows_to_int,
    gcd_forms,
    graded_basis,
    int_kernel_basis,
    int_rank,
    rehomogenize,
    solve_linear,
)

from conftest import binary_forms, laurent_forms, small_ints, to_sympy

X0 = BinaryForm.monomial(1, 0)
X1 = BinaryForm.monomial(1, 1)


class TestBinaryForm:
    def test_zero_normal_form(self):
        assert BinaryForm.from_coeffs(3, [0, 0, 0, 0]) is BinaryForm.zero()
        assert BinaryForm.from_coeffs(5, [0] * 6) == BinaryForm.from_coeffs(2, [0, 0, 0])

    def test_coeff_length_checked(self):
        with pytest.raises(ValueError):
            BinaryForm.from_coeffs(2, [1, 2])

    def test_orders(self):
        f = X0 * X1 * X1  # X0 X1^2
        assert f.x0_order == 1 and f.x1_order == 2

    def test_chart_restrictions(self):
        f = BinaryForm.from_coeffs(2, [1, -2, 3])  # X0^2 - 2 X0 X1 + 3 X1^2
        assert f.chart0() == LaurentForm.from_pairs([(0, 1), (1, -2), (2, 3)])
        assert f.chart1() == LaurentForm.from_pairs([(2, 1), (1, -2), (0, 3)])

    @given(binary_forms(), binary_forms())
    @settings(max_examples=60)
    def test_product_matches_sympy(self, f, g):
        x0, x1 = sympy.symbols("x0 x1")
        ours = to_sympy(f * g, x0, x1)
        theirs = sympy.expand(to_sympy(f, x0, x1) * to_sympy(g, x0, x1))
        assert sympy.simplify(ours - theirs) == 0

    @given(binary_forms(allow_zero=False))
    @settings(max_examples=40)
    def test_rehomogenize_roundtrip(self, f):
        # dehomogenize/rehomogenize round-trips whenever X0 does not divide
        if f.x0_order == 0:
            assert rehomogenize(f.chart0(), f.degree) == f

    def test_exact_division(self):
        f = (X0 + X1) * (X0 * X0 + X1 * X1)
        assert f.try_exact_div(X0 + X1) == X0 * X0 + X1 * X1
        assert f.try_exact_div(X0 - X1) is None


class TestGradedBasis:
    def test_examples(self):
        assert [str(m) for m in graded_basis(2)] == ["X0^2", "X0*X1", "X1^2"]
        assert graded_basis(0) == [BinaryForm.constant(1)]
        assert graded_basis(-1) == []

    @given(st.integers(min_value=-3, max_value=12))
    def test_size(self, d):
        assert len(graded_basis(d)) == max(d + 1, 0)


class TestGcd:
    def test_coprime_monomials(self):
        g = gcd_forms([X1 * X1 * X1, X0 * X0 * X0])
        assert g.degree == 0 and g.coeffs == (Q(1),)

    def test_common_x0(self):
        assert gcd_forms([X0 * X1 * X1, X0 * X0 * X0]) == X0

    def test_three_forms_coprime(self):
        # univariate gcd after dehomogenizing, plus the point at infinity
        forms = [X0 * X1 * X1, X1 * (X0 * X0 - X1 * X1), X0 * X0 * X0]
        assert gcd_forms(forms).degree == 0

    def test_zero_handling(self):
        assert gcd_forms([BinaryForm.zero(), BinaryForm.zero()]).is_zero
        assert gcd_forms([BinaryForm.zero(), X0 * X1]) == X0 * X1

    def test_monic_normalization(self):
        f = (X0 + X1).scale(3)
        g = (X0 + X1).scale(-7) * X1
        got = gcd_forms([f * X1, g])
        # monic in the largest present variable: top X1 coefficient is 1
        assert got == (X0 + X1) * X1

    @given(
        binary_forms(max_degree=3, allow_zero=False),
        binary_forms(max_degree=2, allow_zero=False),
        binary_forms(max_degree=2, allow_zero=False),
    )
    @settings(max_examples=60, deadline=None)
    def test_against_sympy(self, common, f, g):
        """gcd divides both inputs and matches sympy's up to a scalar."""
        lhs, rhs = common * f, common * g
        got = gcd_forms([lhs, rhs])
        assert lhs.try_exact_div(got) is not None
        assert rhs.try_exact_div(got) is not None
        assert got.try_exact_div(common) is not None
        x0, x1 = sympy.symbols("x0 x1")
        expected = sympy.gcd(to_sympy(lhs, x0, x1), to_sympy(rhs, x0, x1))
        assert sympy.total_degree(expected) == got.degree


class TestLaurent:
    @given(laurent_forms(), laurent_forms())
    @settings(max_examples=50)
    def test_ring_ops(self, f, g):
        assert (f + g) - g == f
        assert f * g == g * f

    @given(laurent_forms())
    def test_invert_involution(self, f):
        assert f.invert_x().invert_x() == f

    def test_dict_roundtrip(self):
        f = LaurentForm.from_pairs([(-3, Fraction(1, 2)), (2, -5)])
        assert LaurentForm.from_dict(f.to_dict()) == f


class TestLinearAlgebra:
    def test_identity_solve(self):
        sol = solve_linear(RatMatrix.identity(3), [1, 0, 0])
        assert sol.feasible and sol.particular == (Q(1), Q(0), Q(0)) and sol.kernel == ()

    def test_zero_matrix(self):
        sol = solve_linear(RatMatrix.zero(2, 3), [0, 0])
        assert sol.feasible and sol.particular == (Q(0),) * 3
        assert len(sol.kernel) == 3

    def test_underdetermined(self):
        sol = solve_linear(RatMatrix.from_rows([[1, 1]]), [2])
        assert sol.particular == (Q(2), Q(0))
        # kernel spans [1, -1]
        assert len(sol.kernel) == 1
        v = sol.kernel[0]
        assert v[0] + v[1] == 0 and v != (Q(0), Q(0))

    def test_infeasible(self):
        sol = solve_linear(RatMatrix.from_rows([[1], [1]]), [0, 1])
        assert not sol.feasible and sol.particular is None

    @given(
        st.integers(min_value=1, max_value=5),
        st.integers(min_value=1, max_value=5),
        st.data(),
    )
    @settings(max_examples=40, deadline=None)
    def test_rank_nullity_and_exactness(self, rows, cols, data):
        entries = [
            [data.draw(small_ints) for _ in range(cols)] for _ in range(rows)
        ]
        mat = RatMatrix.from_rows(entries)
        rank = mat.rank()
        kernel = mat.kernel_basis()
        assert rank + len(kernel) == cols
        assert rank == sympy.Matrix(entries).rank()
        for vec in kernel:
            assert all(v == 0 for v in mat.mul_vec(vec))
        rhs = mat.mul_vec([data.draw(small_ints) for _ in range(cols)])
        sol = mat.solve(rhs)
        assert sol.feasible
        assert mat.mul_vec(sol.particular) == rhs

    @given(st.integers(min_value=1, max_value=5), st.data())
    @settings(max_examples=30, deadline=None)
    def test_int_paths_agree(self, cols, data):
        rows = data.draw(st.integers(min_value=1, max_value=5))
        entries = [
            [Fraction(data.draw(small_ints), data.draw(st.integers(1, 3))) for _ in range(cols)]
            for _ in range(rows)
        ]
        mat = RatMatrix.from_rows(entries)
        int_rows = fraction_rows_to_int(entries)
        assert int_rank(int_rows) == len(mat.rref()[1])
        kernel = int_kernel_basis(int_rows, cols)
        assert sorted(map(tuple, kernel)) == sorted(map(tuple, mat.kernel_basis()))
