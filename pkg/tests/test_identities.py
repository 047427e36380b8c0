from fractions import Fraction
from math import factorial

import pytest
from mpmath import mp, mpf

from tsum.identities import (
    HypothesisError,
    PartialFractionRational,
    RESIDUE_CASE_CATALOG,
    verify_cor3_2,
    verify_cor3_3,
    verify_cor3_5,
    verify_cor3_6,
    verify_kernel_expansions,
    verify_thm3_1,
    verify_thm3_4,
    verify_thm3_6,
    verify_thm3_7,
)
from tsum.special import KernelKind, ZetaConvention, kernel_jet, psi_jet, ttilde, ttilde_bar

P = 192
TOL = "1e-40"
F = Fraction


class TestPairTheorems:
    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_tan_kernel_identity(self, p):
        rep = verify_thm3_1(p, F(1, 4), F(1, 3), P, TOL)
        assert rep.passed and rep.absolute_gap <= rep.tolerance

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_cos_kernel_identity(self, p):
        rep = verify_thm3_4(p, F(1, 4), F(1, 3), P, TOL)
        assert rep.passed

    def test_negative_parameter_sample(self):
        assert verify_thm3_1(2, F(1, 5), F(-1, 5), P, TOL).passed
        assert verify_thm3_4(2, F(1, 7), F(-1, 7), P, TOL).passed

    def test_closed_form_symmetric_in_a_b(self):
        fwd = verify_thm3_1(3, F(1, 4), F(1, 3), P, TOL)
        rev = verify_thm3_1(3, F(1, 3), F(1, 4), P, TOL)
        with mp.workprec(P + 16):
            assert abs(fwd.rhs - rev.rhs) < mpf(10) ** -40

    def test_hypothesis_rejection(self):
        with pytest.raises(HypothesisError):
            verify_thm3_1(1, F(1, 4), F(1, 4), P, TOL)
        with pytest.raises(HypothesisError):
            verify_thm3_1(1, F(1, 2), F(1, 3), P, TOL)
        with pytest.raises(HypothesisError):
            verify_thm3_4(1, F(3, 2), F(1, 3), P, TOL)
        with pytest.raises(HypothesisError):
            verify_thm3_1(0, F(1, 4), F(1, 3), P, TOL)

    def test_higher_precision_scaling(self):
        rep = verify_thm3_1(3, F(1, 4), F(1, 3), 320, "1e-80")
        assert rep.passed

    def test_parameters_near_the_unit_box_edge(self):
        assert verify_thm3_1(3, F(5, 7), F(-6, 7), P, TOL).passed
        assert verify_thm3_4(4, F(5, 7), F(-6, 7), P, TOL).passed

    def test_negative_control_detects_missing_convention(self):
        rep = verify_thm3_1(2, F(1, 4), F(1, 3), P, TOL,
                            convention=ZetaConvention(enabled=False))
        assert not rep.passed
        with mp.workprec(64):
            assert rep.absolute_gap > mpf("1e-6")
            assert rep.absolute_gap > mpf(10) ** 6 * rep.tolerance


class TestCorollaries:
    def test_all_four_families(self):
        assert verify_cor3_2(0, F(1, 3), P, TOL).passed
        assert verify_cor3_2(2, F(1, 4), P, TOL).passed
        assert verify_cor3_3(1, F(2, 5), P, TOL).passed
        assert verify_cor3_5(1, F(1, 4), P, TOL).passed
        assert verify_cor3_6(0, F(1, 3), P, TOL).passed
        assert verify_cor3_6(2, F(1, 5), P, TOL).passed

    def test_hypothesis_boxes(self):
        with pytest.raises(HypothesisError):
            verify_cor3_2(0, F(2, 3), P, TOL)  # outside 0 < |a| < 1/2
        with pytest.raises(HypothesisError):
            verify_cor3_5(1, F(-3, 5), P, TOL)
        with pytest.raises(HypothesisError):
            verify_cor3_5(0, F(1, 4), P, TOL)  # m >= 1
        with pytest.raises(HypothesisError):
            verify_cor3_3(0, F(3, 2), P, TOL)


class TestResidueTheorems:
    def test_catalog_totals_vanish(self):
        for p, rtext in RESIDUE_CASE_CATALOG:
            r = PartialFractionRational.parse(rtext)
            assert verify_thm3_6(p, r, P, "1e-35").passed, (p, rtext)
            assert verify_thm3_7(p, r, P, "1e-35").passed, (p, rtext)

    def test_pair_specialization_matches_pair_theorems(self):
        # r(z) = 1/((z+a)(z+b)) in partial fractions reproduces the two-pole checks
        a, b = F(1, 4), F(1, 3)
        c = 1 / (b - a)
        r = PartialFractionRational(((-a, 1, c), (-b, 1, -c)))
        for p in (1, 2, 3):
            assert verify_thm3_6(p, r, P, TOL).passed
            assert verify_thm3_1(p, a, b, P, TOL).passed
            assert verify_thm3_7(p, r, P, TOL).passed
            assert verify_thm3_4(p, a, b, P, TOL).passed

    def test_double_pole_case(self):
        r = PartialFractionRational(((F(-1, 4), 2, F(1)),))
        assert verify_thm3_6(2, r, P, "1e-35").passed

    def test_inadmissible_rational_functions(self):
        with pytest.raises(HypothesisError):
            PartialFractionRational(((F(0), 2, F(1)),))  # pole at 0
        with pytest.raises(HypothesisError):
            PartialFractionRational(((F(3), 2, F(1)),))  # positive integer pole
        with pytest.raises(HypothesisError):
            PartialFractionRational(((F(1, 2), 2, F(1)),))  # half-odd pole
        with pytest.raises(HypothesisError):
            PartialFractionRational(((F(1, 5), 1, F(1)),))  # O(z^-1) at infinity

    def test_parse_and_text_roundtrip(self):
        r = PartialFractionRational.parse("(-1/4,1,12);(-1/3,1,-12)")
        assert r.text() == "(-1/4,1,12);(-1/3,1,-12)"
        assert r.max_order() == 1 and r.poles() == [F(-1, 3), F(-1, 4)]


class TestExpansionSuites:
    def test_full_suite_order_six(self):
        rep = verify_kernel_expansions(6, P, TOL)
        assert rep.passed
        assert rep.terms_used > 300

    def test_individual_parts(self):
        assert verify_kernel_expansions(6, P, TOL, parts=("lemma2_3",)).passed
        assert verify_kernel_expansions(6, P, TOL, parts=("lemma2_4",)).passed

    def test_order_guard(self):
        with pytest.raises(HypothesisError):
            verify_kernel_expansions(9, P, TOL)

    def test_tan_derivative_value_at_one(self):
        # first derivative of the tangent kernel at z = 1 is 2 ttilde(2)
        jet = kernel_jet(KernelKind.PI_TAN, 1, 1, P)
        with mp.workprec(P + 16):
            assert abs(factorial(1) * jet.coeffs[1] - 2 * ttilde(2, P + 16)) < mpf(2) ** -180

    def test_sec_second_derivative_at_zero(self):
        # second derivative of the secant kernel at 0 is -2 * 2! * ttilde_bar(3)
        jet = kernel_jet(KernelKind.PI_OVER_COS, 0, 2, P)
        with mp.workprec(P + 16):
            want = -2 * factorial(2) * ttilde_bar(3, P + 16)
            assert abs(factorial(2) * jet.coeffs[2] - want) < mpf(2) ** -180

    def test_psi_expansion_coefficient_value(self):
        # at base 1/2 with p = 2: first coefficient is h_1^(2) + ttilde(2) = 4 + pi^2/2
        jet = psi_jet(2, F(1, 2), 2, P)
        with mp.workprec(P + 16):
            want = 4 + ttilde(2, P + 16)
            assert abs(jet.coeffs[0] - want) < mpf(2) ** -180
