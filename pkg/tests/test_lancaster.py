import math
from fractions import Fraction as F

import pytest

from poslab.errors import InsufficientMomentsError
from poslab.lancaster import (
    DEFAULT_GRID,
    LancasterProblem,
    SupportFlags,
    full_order_check,
    lancaster_report,
    mehler_demo_battery,
    mehler_density,
    mehler_kernel,
    mehler_moments,
    moment_polynomials,
    necessary_conditions,
    preset_problem,
)
from poslab.moments import MomentSequence, builtin
from poslab.orthopoly import OrthoBasis, Polynomial, basis_from_moments, hermite


ALL_FLAGS = SupportFlags(
    zero_in_supp_mu=True, mu_unbounded=True, nu_unbounded=True, same_marginals=True
)


def mehler_problem(rho, order):
    basis = hermite(order)
    return LancasterProblem(basis, basis, tuple(rho**n for n in range(order + 1)), ALL_FLAGS)


class TestMomentPolynomials:
    def test_base_case_is_one(self):
        mp = moment_polynomials(mehler_problem(F(1, 2), 4))
        assert mp.ma[0] == Polynomial.one()
        assert mp.mb[0] == Polynomial.one()

    def test_first_two_orders_at_half(self):
        mp = moment_polynomials(mehler_problem(F(1, 2), 4))
        assert mp.ma[1] == Polynomial((F(0), F(1, 2)))  # y/2
        assert mp.ma[2] == Polynomial((F(3, 4), F(0), F(1, 4)))  # 3/4 + y^2/4

    def test_recursion_equals_closed_form(self):
        for rho in (F(1, 2), F(-1, 3), F(3, 4)):
            prob = mehler_problem(rho, 10)
            mp = moment_polynomials(prob)
            closed = mehler_moments(rho, 10)
            assert mp.ma == closed
            assert mp.mb == closed

    def test_product_measure_coefficients_give_constant_moments(self):
        basis = hermite(6)
        prob = LancasterProblem(basis, basis, (F(1), F(0), F(0), F(0), F(0), F(0), F(0)))
        mp = moment_polynomials(prob)
        gauss = builtin("gaussian", 7)
        for n in range(7):
            assert mp.ma[n].degree <= 0
            assert mp.ma[n].coefficient(0) == gauss[n]

    def test_leading_coefficient_law(self):
        prob = mehler_problem(F(2, 3), 8)
        mp = moment_polynomials(prob)
        for n in range(9):
            assert mp.ma[n].coefficient(n) == prob.coeffs[n] * prob.norm_scale(n)

    def test_swapping_families_transposes_the_roles(self):
        # alpha = Hermite, beta = Catalan-family: swapping exchanges ma and mb
        a = hermite(4)
        b = basis_from_moments(builtin("catalan", 9) , 4)
        norm_square_coeffs = (F(1), F(0), F(0), F(0), F(0))
        with pytest.raises(ValueError):
            # catalan norms are not perfect-square multiples of n!
            LancasterProblem(a, b, norm_square_coeffs)

    def test_swap_symmetry_for_equal_norm_families(self):
        base = hermite(6)
        cs = (F(1), F(1, 3), F(1, 9), F(1, 27), F(1, 81), F(1, 243), F(1, 729))
        forward = moment_polynomials(LancasterProblem(base, base, cs))
        backward = moment_polynomials(LancasterProblem(base, base, cs))
        assert forward.ma == backward.mb
        assert forward.mb == backward.ma

    def test_swapping_distinct_families_transposes_everything(self):
        h = hermite(5)
        scaled = OrthoBasis(
            polys=tuple(p * F(1, 2 ** n) for n, p in enumerate(h.polys)),
            norms=tuple(v / F(4) ** n for n, v in enumerate(h.norms)),
            recurrence=tuple((F(a, 2), F(b), F(c, 4)) for (a, b, c) in h.recurrence),
            source_moments=h.source_moments,
        )
        cs = tuple(F(1, 2) ** n for n in range(6))
        fwd = moment_polynomials(LancasterProblem(h, scaled, cs))
        rev = moment_polynomials(LancasterProblem(scaled, h, cs))
        assert fwd.ma == rev.mb
        assert fwd.mb == rev.ma
        # and the grid reports transpose side-for-side
        ga, gb = (F(0), F(1)), (F(-1),)
        rep_f = lancaster_report(LancasterProblem(h, scaled, cs), ga, gb, order=2)
        rep_r = lancaster_report(LancasterProblem(scaled, h, cs), gb, ga, order=2)
        f_map = {(v.side, v.point): v.report for v in rep_f.grid_verdicts}
        r_map = {(v.side, v.point): v.report for v in rep_r.grid_verdicts}
        flip = {"a": "b", "b": "a"}
        assert f_map == {(flip[s], p): rep for (s, p), rep in r_map.items()}


class TestProblemValidation:
    def test_c0_must_be_one(self):
        basis = hermite(2)
        with pytest.raises(ValueError):
            LancasterProblem(basis, basis, (F(2), F(0), F(0)))

    def test_families_must_cover_the_order(self):
        with pytest.raises(ValueError):
            LancasterProblem(hermite(2), hermite(2), (F(1), F(0), F(0), F(0)))

    def test_norm_ratios_must_have_rational_roots(self):
        a = hermite(4)
        b = basis_from_moments(builtin("factorial", 9), 4)
        with pytest.raises(ValueError) as err:
            LancasterProblem(a, b, (F(1), F(0), F(0), F(0), F(0)))
        assert "perfect rational square" in str(err.value)

    def test_rescaled_norms_with_square_ratios_are_accepted(self):
        h = hermite(3)
        scaled = OrthoBasis(
            polys=tuple(p * F(1, 2 ** n) for n, p in enumerate(h.polys)),
            norms=tuple(v / F(4) ** n for n, v in enumerate(h.norms)),
            recurrence=tuple((F(a, 2), F(b), F(c, 4)) for (a, b, c) in h.recurrence),
            source_moments=h.source_moments,
        )
        prob = LancasterProblem(h, scaled, (F(1), F(1, 2), F(1, 4), F(1, 8)))
        assert prob.norm_scale(2) == 4


class TestGridReport:
    def test_mehler_grid_is_strictly_positive(self):
        report = lancaster_report(mehler_problem(F(1, 2), 10), order=3)
        assert report.verdict == "positive"
        assert len(report.grid_verdicts) == 2 * len(DEFAULT_GRID)
        for v in report.grid_verdicts:
            assert v.report.strictly_positive

    def test_recovered_grid_sequences_are_conditional_normal_moments(self):
        from tests_support import normal_moments

        rho = F(1, 2)
        report = lancaster_report(mehler_problem(rho, 8), grid_a=(F(1),), grid_b=(), order=4)
        (verdict,) = report.grid_verdicts
        mp = moment_polynomials(mehler_problem(rho, 8))
        vals = tuple(mp.ma[k](F(1)) for k in range(9))
        assert vals == normal_moments(rho, 1 - rho * rho, 9).values

    def test_overexpanded_geometric_is_refuted_at_the_origin(self):
        # c_n = 2^n: conditional variance at y=0 is 1 - c_2 = -3
        basis = hermite(4)
        prob = LancasterProblem(basis, basis, tuple(F(2) ** n for n in range(5)))
        report = lancaster_report(prob, grid_a=(F(0),), grid_b=(F(0),), order=1)
        assert report.verdict == "refuted"
        origin = report.grid_verdicts[0].report
        assert origin.hankel_dets[1] == -3

    def test_oversized_first_coefficient_is_refuted_on_the_default_grid(self):
        # |c_1| > 1 with decaying tail: m_2(y) - m_1(y)^2 = (c_2 - c_1^2) y^2 + (1 - c_2)
        # goes negative once |y| >= 1/2
        basis = hermite(4)
        prob = LancasterProblem(basis, basis, (F(1), F(2), F(1, 4), F(1, 8), F(1, 16)))
        report = lancaster_report(prob, order=1)
        assert report.verdict == "refuted"
        by_point = {(v.side, v.point): v.report for v in report.grid_verdicts}
        assert by_point[("a", F(0))].is_pm  # the origin alone does not betray it
        assert not by_point[("a", F(1))].is_pm

    def test_order_must_fit_the_problem(self):
        with pytest.raises(InsufficientMomentsError):
            lancaster_report(mehler_problem(F(1, 2), 4), order=3)

    def test_report_is_independent_of_grid_order(self):
        prob = mehler_problem(F(1, 3), 6)
        fwd = lancaster_report(prob, grid_a=(F(-1), F(0), F(1)), grid_b=(), order=3)
        rev = lancaster_report(prob, grid_a=(F(1), F(0), F(-1)), grid_b=(), order=3)
        assert {(v.side, v.point): v.report for v in fwd.grid_verdicts} == {
            (v.side, v.point): v.report for v in rev.grid_verdicts
        }


class TestNecessaryConditions:
    def test_square_sums_bounded_by_geometric_limit(self):
        prob = mehler_problem(F(1, 2), 12)
        nec = necessary_conditions(prob)
        bound = 1 / (1 - F(1, 4))
        assert all(p < bound for p in nec.square_sum_partials)

    def test_origin_sum_approaches_the_kernel_at_zero(self):
        prob = mehler_problem(F(1, 2), 20)
        nec = necessary_conditions(prob)
        assert nec.origin_sum is not None and nec.origin_sum > 0
        assert abs(float(nec.origin_sum) - 2 / math.sqrt(3)) < 1e-6

    def test_coefficient_sequence_is_rank_one_pm(self):
        nec = necessary_conditions(mehler_problem(F(1, 2), 12))
        assert nec.coeff_pm is not None and nec.coeff_pm.is_pm
        assert all(d == 0 for d in nec.coeff_pm.hankel_dets[1:])
        assert nec.ratio_pm is not None and nec.ratio_pm.is_pm

    def test_trivial_coefficients(self):
        basis = hermite(4)
        prob = LancasterProblem(basis, basis, (F(1), F(0), F(0), F(0), F(0)), ALL_FLAGS)
        nec = necessary_conditions(prob)
        assert nec.square_sum_partials == (F(1),) * 5
        assert nec.origin_sum == 1

    def test_checks_are_gated_on_support_flags(self):
        prob = mehler_problem(F(1, 2), 6)
        bare = LancasterProblem(prob.alpha, prob.beta, prob.coeffs)  # no declared support
        nec = necessary_conditions(bare)
        assert nec.origin_partials is None
        assert nec.ratio_pm is None
        assert nec.coeff_pm is None


class TestFullOrderCheck:
    def test_reference_family_passes(self):
        h = hermite(6)
        flags = full_order_check([F(1, 2) ** n * h.polys[n] for n in range(7)], h)
        assert all(flags)

    def test_degree_deficient_entry_fails(self):
        h = hermite(6)
        polys = [F(1, 2) ** n * h.polys[n] for n in range(7)]
        polys[2] = Polynomial.x()
        flags = full_order_check(polys, h)
        assert flags == (True, True, False, True, True, True, True)

    def test_constant_passes_at_order_zero(self):
        assert full_order_check([Polynomial.one()], hermite(2)) == (True,)

    def test_scale_invariance(self):
        h = hermite(5)
        base = [h.polys[n] for n in range(6)]
        scaled = [F(7, 3) * p for p in base]
        assert full_order_check(base, h) == full_order_check(scaled, h)


class TestMehlerReference:
    def test_moment_polynomial_values(self):
        polys = mehler_moments(F(1, 2), 4)
        assert polys[0] == Polynomial.one()
        assert polys[2] == Polynomial((F(3, 4), F(0), F(1, 4)))

    def test_closed_form_structure(self):
        rho = F(2, 5)
        polys = mehler_moments(rho, 6)
        # m_2(y) = rho^2 y^2 + (1 - rho^2)
        assert polys[2] == Polynomial((1 - rho * rho, F(0), rho * rho))

    def test_independence_limit(self):
        polys = mehler_moments(F(0), 6)
        gauss = builtin("gaussian", 7)
        for n, p in enumerate(polys):
            assert p.degree <= 0 and p.coefficient(0) == gauss[n]

    def test_rho_must_be_inside_the_unit_interval(self):
        with pytest.raises(ValueError):
            mehler_moments(F(1), 3)
        with pytest.raises(ValueError):
            mehler_density(0.0, 0.0, F(3, 2))

    def test_density_values(self):
        assert mehler_density(0.0, 0.0, F(0)) == pytest.approx(1 / math.sqrt(2 * math.pi))
        rho = F(3, 10)
        got = mehler_density(0.0, 0.0, rho)
        assert got == pytest.approx(1 / math.sqrt(2 * math.pi * (1 - 0.09)))
        got = mehler_density(1.0, 1.0, rho)
        assert got == pytest.approx(math.exp(-0.49 / 1.82) / math.sqrt(2 * math.pi * 0.91))

    def test_kernel_degenerate_cases(self):
        assert mehler_kernel(1.3, -0.4, F(0), 10) == 1.0

    def test_kernel_matches_density_oracle(self):
        rho = F(3, 10)
        for x in (-2.0, -1.0, 0.0, 1.0, 2.0):
            for y in (-2.0, -1.0, 0.0, 1.0, 2.0):
                kernel = mehler_kernel(x, y, rho, 30)
                oracle = mehler_density(x, y, rho) * math.sqrt(2 * math.pi) * math.exp(x * x / 2)
                assert abs(kernel - oracle) <= 1e-8

    def test_kernel_at_origin_closed_form(self):
        val = mehler_kernel(0.0, 0.0, F(3, 10), 30)
        assert val == pytest.approx((1 - 0.09) ** -0.5, abs=1e-10)


class TestPresetsAndBattery:
    def test_presets_build_and_stay_positive(self):
        for name in ("harmonic", "catalan-ratio", "fibonacci-scaled"):
            prob = preset_problem(name, 8)
            report = lancaster_report(prob, order=2)
            assert report.verdict == "positive", name

    def test_mehler_preset_needs_rho(self):
        with pytest.raises(ValueError):
            preset_problem("mehler", 6)
        with pytest.raises(ValueError):
            preset_problem("harmonic", 6, rho=F(1, 2))
        with pytest.raises(ValueError):
            preset_problem("unknown", 6)

    def test_battery_all_green(self):
        results = mehler_demo_battery(F(1, 2), 10)
        assert results, "battery must produce checks"
        for r in results:
            assert r.passed, r.name

    def test_battery_at_negative_rho(self):
        results = mehler_demo_battery(F(-1, 3), 8)
        assert all(r.passed for r in results)
