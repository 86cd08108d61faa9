import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from p1ropes.rope import (
    FamilyCocycle,
    RopeClass,
    SmoothCase,
    degeneration_chain,
    invariants,
    lift_class_to_family,
    maroni_criterion_equiv,
    relative_dim_check,
    smoothability_report,
    triple_cover_exists,
)
from p1ropes.sheaf import CechClass


class TestInvariants:
    def test_examples(self):
        assert invariants(5, 4) == (7, 1, True)
        assert invariants(3, 3) == (4, 0, True)
        assert invariants(7, 1) == (6, 6, False)

    def test_rejects_bad_type(self):
        with pytest.raises(ValueError):
            invariants(3, 0)
        with pytest.raises(ValueError):
            invariants(2, 3)

    def test_cover_examples(self):
        assert triple_cover_exists(5, 4)
        assert not triple_cover_exists(7, 1)
        assert triple_cover_exists(2, 1)

    def test_criterion_equivalence_grid(self):
        # exact equivalence of the cover bound and the Maroni-vs-genus bound
        for a in range(1, 31):
            for b in range(1, a + 1):
                assert maroni_criterion_equiv(a, b) == (a <= 2 * b)


class TestChains:
    def test_examples(self):
        assert degeneration_chain(7, 1) == [(6, 2), (5, 3)]
        assert degeneration_chain(5, 4) == []
        assert degeneration_chain(6, 2) == [(5, 3)]

    @given(st.integers(min_value=1, max_value=9), st.integers(min_value=1, max_value=9))
    @settings(max_examples=30, deadline=None)
    def test_chain_structure(self, a, b):
        if a < b:
            a, b = b, a
        chain = degeneration_chain(a, b, certify=False)
        genus = a + b - 2
        prev = (a, b)
        for step in chain:
            assert step == (prev[0] - 1, prev[1] + 1)
            assert step[0] + step[1] - 2 == genus
            assert (prev[0] - prev[1]) - (step[0] - step[1]) == 2
            prev = step
        assert prev[0] <= 2 * prev[1]
        if chain:
            before_last = ((a, b), *chain)[-2]
            assert before_last[0] > 2 * before_last[1]


class TestRopeClass:
    def test_dimensions(self):
        r = RopeClass.make(7, 5, [1, 0, 0, 0], [0, 1])
        assert r.class_space_dim == 4 + 2
        assert not r.is_split
        assert RopeClass.split(7, 5).is_split

    def test_padding_and_validation(self):
        r = RopeClass.make(5, 4, [1], [])
        assert r.zeta_a.coeffs == (Fraction(1), Fraction(0))
        assert r.zeta_b.coeffs == (Fraction(0),)
        with pytest.raises(ValueError):
            RopeClass.make(5, 4, [1, 2, 3], [])

    def test_json_roundtrip(self):
        r = RopeClass.make(6, 4, [1, Fraction(2, 3), 0], [-2])
        again = RopeClass.from_json(json.loads(json.dumps(r.to_json())))
        assert again == r

    @given(st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=12))
    @settings(max_examples=40)
    def test_class_space_dim_formula(self, a, b):
        if a < b:
            a, b = b, a
        r = RopeClass.split(a, b)
        assert r.class_space_dim == max(a - 3, 0) + max(b - 3, 0)
        assert len(r.zeta_a.coeffs) == max(a - 3, 0)
        assert len(r.zeta_b.coeffs) == max(b - 3, 0)


class TestFamilyLift:
    def test_zero_class(self):
        cocycle = lift_class_to_family(RopeClass.split(5, 3))
        assert cocycle.comp_a.is_zero and cocycle.comp_b.is_zero

    def test_roundtrip_example(self):
        r = RopeClass.make(5, 3, [1, 0], [])
        cocycle = lift_class_to_family(r)
        za, zb = cocycle.central_normal_form()
        assert za == r.zeta_a and zb == r.zeta_b

    def test_precondition(self):
        with pytest.raises(ValueError):
            lift_class_to_family(RopeClass.split(4, 3))

    @given(st.data())
    @settings(max_examples=20, deadline=None)
    def test_restriction_identity(self, data):
        b = data.draw(st.integers(min_value=1, max_value=4))
        a = b + data.draw(st.integers(min_value=2, max_value=4))
        za = [data.draw(st.integers(-3, 3)) for _ in range(max(a - 3, 0))]
        zb = [data.draw(st.integers(-3, 3)) for _ in range(max(b - 3, 0))]
        r = RopeClass.make(a, b, za, zb)
        cocycle = lift_class_to_family(r)
        assert cocycle.central_normal_form() == (r.zeta_a, r.zeta_b)


class TestRelativeDims:
    def test_balanced_target(self):
        # (5,3), N=4: both fibers give 3 * (h0(1) + h0(3)) = 3 * (h0(2) + h0(2)) = 18
        assert relative_dim_check(5, 3, 4, [0, 1])

    def test_high_maroni(self):
        # derived by the splitting oracle: both sides are 5 * 10 = 50
        assert relative_dim_check(7, 1, 6, [0, 1])

    def test_constant_family(self):
        assert relative_dim_check(4, 4, 4, [0, 1, 2])

    def test_precondition(self):
        with pytest.raises(ValueError):
            relative_dim_check(7, 1, 5, [0, 1])


class TestSmoothability:
    def test_direct_cover(self):
        rep = smoothability_report(RopeClass.make(5, 4, [1], []))
        assert rep.verdict and rep.case is SmoothCase.DIRECT_COVER
        assert rep.n0 == 4 and rep.chain == ()

    def test_chain_case(self):
        rep = smoothability_report(RopeClass.make(7, 1, [2, 0, 0, 0], []))
        assert rep.verdict and rep.case is SmoothCase.DEGENERATION_CHAIN
        assert rep.chain == ((6, 2), (5, 3)) and rep.n0 == 6

    def test_genus_zero(self):
        rep = smoothability_report(RopeClass.split(1, 1))
        assert rep.verdict and rep.genus == 0 and rep.case is SmoothCase.DIRECT_COVER

    def test_json_fields(self):
        rep = smoothability_report(RopeClass.split(6, 2)).to_json()
        assert set(rep) == {
            "genus", "maroni", "cover_exists", "case", "chain", "N0", "verdict", "certificate",
        }
