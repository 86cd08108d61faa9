import json
import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from p1ropes.forms import BinaryForm, LaurentForm
from p1ropes.rnc import (
    RncContext,
    TauHom,
    connecting_delta,
    delta_component_matrix,
    ext1_conormal_dim,
    gamma_matrix,
    hom_dims,
    random_hom_omega,
    sequence_selftest,
    solve_delta,
    tau_space_dim,
)
from p1ropes.sheaf import CechClass, cech_reduce

X0 = BinaryForm.monomial(1, 0)
X1 = BinaryForm.monomial(1, 1)
ONE = BinaryForm.constant(1)
ZF = BinaryForm.zero()


def _random_tau(a, b, n, rng):
    dim = tau_space_dim(a, b, n)
    return TauHom.from_coordinates(a, b, n, [rng.randint(-4, 4) for _ in range(dim)])


class TestDims:
    def test_examples(self):
        assert hom_dims(5, 4, 4) == (0, 12, 15, 3, 0)
        assert hom_dims(5, 5, 3) == (0, 0, 4, 4, 0)
        assert hom_dims(3, 3, 4) == (0, 24, 24, 0, 0)

    @given(
        st.integers(min_value=1, max_value=9),
        st.integers(min_value=1, max_value=9),
        st.integers(min_value=3, max_value=8),
    )
    @settings(max_examples=60)
    def test_six_term_alternating_sum(self, a, b, n):
        if a < b:
            a, b = b, a
        t1, t2, t3, t4, t5 = hom_dims(a, b, n)
        t6 = ext1_conormal_dim(a, b, n)
        assert t1 - t2 + t3 - t4 + t5 - t6 == 0


class TestGamma:
    def test_explicit_example(self):
        a_rows = [[ONE, ZF, ONE, ZF], [X1, ZF, ZF, -X0]]
        m = gamma_matrix(a_rows, 5, 4, 4)
        assert [[str(e) for e in row] for row in m.rows] == [
            ["X1", "-X0", "X1"],
            ["X1^2", "0", "X0^2"],
        ]

    def test_zero(self):
        a_rows = [[ZF] * 4, [ZF] * 4]
        assert gamma_matrix(a_rows, 5, 4, 4).is_zero

    def test_telescoping(self):
        a_rows = [[ONE, ONE, ONE, ONE], [ZF] * 4]
        m = gamma_matrix(a_rows, 5, 4, 4)
        assert all(str(e) == "-X0 + X1" for e in m.rows[0])

    def test_degree_validation(self):
        with pytest.raises(ValueError):
            gamma_matrix([[X1, ZF, ZF, ZF], [ZF] * 4], 5, 4, 4)


class TestDelta:
    def test_image_of_gamma_is_killed(self):
        rng = random.Random(7)
        for a, b, n in [(5, 4, 4), (3, 3, 4), (6, 4, 5)]:
            tau = gamma_matrix(random_hom_omega(a, b, n, rng), a, b, n)
            za, zb = connecting_delta(tau)
            assert za.is_zero and zb.is_zero

    def test_twisted_cubic_matrix(self):
        # the connecting map on constant 2x2 matrices is minus the identity
        mat = delta_component_matrix(5, 3)
        assert mat.entries == [[-1, 0], [0, -1]]

    def test_twisted_cubic_basis_classes_independent(self):
        basis_images = []
        for l in range(2):
            for r in range(2):
                rows = [[ZF, ZF], [ZF, ZF]]
                rows[r][l] = ONE
                tau = TauHom(5, 5, 3, (tuple(rows[0]), tuple(rows[1])))
                za, zb = connecting_delta(tau)
                basis_images.append(tuple(za.coeffs) + tuple(zb.coeffs))
        from p1ropes.forms import RatMatrix

        assert RatMatrix.from_rows([list(v) for v in basis_images]).rank() == 4

    @given(st.sampled_from([(5, 4, 4), (6, 4, 5), (5, 5, 3), (7, 2, 6)]), st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_linearity(self, params, seed):
        a, b, n = params
        rng = random.Random(seed)
        t1, t2 = _random_tau(a, b, n, rng), _random_tau(a, b, n, rng)
        za1, zb1 = connecting_delta(t1)
        za2, zb2 = connecting_delta(t2)
        za, zb = connecting_delta(t1 + t2)
        assert za == za1 + za2 and zb == zb1 + zb2

    @given(st.sampled_from([(5, 4, 4), (6, 4, 5), (7, 2, 6), (4, 4, 4)]), st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_closed_form_oracle(self, params, seed):
        """Independent check of the chart-lifting algorithm: the overlap
        cocycle of row r collapses to -sum_l x^(-l) * entry_l(1, x)."""
        a, b, n = params
        tau = _random_tau(a, b, n, random.Random(seed))
        got = connecting_delta(tau)
        for r, c in ((0, a), (1, b)):
            mu = LaurentForm.zero()
            for l, entry in enumerate(tau.rows[r], start=1):
                mu = mu - entry.chart0().shift(-l)
            assert cech_reduce(mu, 2 - c) == got[r]

    def test_solve_delta_roundtrip(self):
        for a, b, n, za, zb in [
            (5, 4, 4, [1, -2], [0]),
            (6, 4, 5, [2, 0, 1], [-1]),
            (5, 5, 3, [1, 2], [3, -4]),
        ]:
            zeta_a = CechClass.from_coeffs(2 - a, za)
            zeta_b = CechClass.from_coeffs(2 - b, zb)
            tau = solve_delta(a, b, n, zeta_a, zeta_b)
            assert connecting_delta(tau) == (zeta_a, zeta_b)


class TestSelftest:
    def test_known_cells(self):
        rep = sequence_selftest(5, 4, 4)
        assert rep.ok and rep.rank_delta == 3 and rep.rank_gamma == 12

        rep = sequence_selftest(5, 5, 3)
        assert rep.ok and rep.rank_gamma == 0 and rep.rank_delta == 4
        assert rep.dims[2] == rep.dims[3] == 4  # bijective connecting map

        rep = sequence_selftest(8, 7, 4)
        assert rep.ok and rep.dims[2] == 0

    def test_grid(self):
        for a in range(1, 10):
            for b in range(1, a + 1):
                for n in range(3, 9):
                    assert sequence_selftest(a, b, n).ok, (a, b, n)


class TestTauHom:
    def test_coordinates_roundtrip(self):
        rng = random.Random(3)
        for a, b, n in [(5, 4, 4), (8, 7, 4), (3, 3, 4)]:
            tau = _random_tau(a, b, n, rng)
            again = TauHom.from_coordinates(a, b, n, tau.coordinates())
            assert again == tau

    def test_json_roundtrip(self):
        tau = _random_tau(5, 4, 4, random.Random(5))
        again = TauHom.from_json(json.loads(json.dumps(tau.to_json())))
        assert again == tau

    def test_degree_validation(self):
        with pytest.raises(ValueError):
            TauHom(5, 4, 4, ((ONE, ZF, ZF), (ZF, ZF, ZF)))


class TestContext:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_frames_certified(self, n):
        report = RncContext(n).verify_frames()
        assert report["frame_splitting"] == [n + 2] * (n - 1)

    def test_quadric_count(self):
        ctx = RncContext(5)
        assert len(ctx.quadric_pairs) == 10
        assert len(ctx.parametrization) == 6
