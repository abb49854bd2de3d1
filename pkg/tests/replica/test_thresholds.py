"""
Tests for the phase boundaries alpha_c(rho) and the curves built from them
"""

import math

import numpy as np
import pytest

from src.ensembles import NonzeroLaw
from src.errors import ConvergenceFailure, NoSolution
from src.numerics import find_root
from src.replica import (
    WORST_CASE_MARGIN,
    CurveMethod,
    PNorm,
    PhaseVerdict,
    RsOrderParams,
    at_boundary,
    at_stability,
    critical_alpha,
    critical_chi_hat,
    critical_rho,
    minimized_norm,
    mse_curve,
    solve_l1_chi_hat,
    successful_branch_alpha,
    threshold_curve,
    thresholds,
    worst_case_l1_alpha,
)

RHO_GRID = [k / 100 for k in range(1, 100)]


def _worst_case_closed_form(rho):
    entropy = 2 * rho * math.log(1 / (2 * rho)) + 2 * rho
    return ((math.sqrt(2 * rho) + math.sqrt(2 * entropy)) / WORST_CASE_MARGIN) ** 2


class TestCriticalAlpha:
    def test_l1_reference_value(self):
        assert critical_alpha(PNorm.L1, 0.5) == pytest.approx(0.83129, abs=1e-4)

    def test_l0_and_l2_lines(self):
        for rho in RHO_GRID:
            assert critical_alpha(PNorm.L0, rho) == rho
            assert critical_alpha(PNorm.L2, rho) == 1.0

    def test_l1_between_l0_and_l2(self):
        for rho in RHO_GRID[::7]:
            assert rho < critical_alpha(PNorm.L1, rho) < 1.0

    def test_l1_limits(self):
        """Test alpha_c -> 0 as rho -> 0 and alpha_c -> 1 as rho -> 1"""
        assert critical_alpha(PNorm.L1, 1e-4) < 0.01
        assert critical_alpha(PNorm.L1, 0.99) > 0.99
        assert critical_alpha(PNorm.L1, 0.999) > 0.999

    def test_rejects_out_of_range(self):
        for rho in (0.0, 1.0, -0.2):
            with pytest.raises(ValueError):
                critical_alpha(PNorm.L1, rho)


class TestCriticalRho:
    def test_l1_reference_value(self):
        assert critical_rho(PNorm.L1, 0.5) == pytest.approx(0.19284, abs=1e-4)

    @pytest.mark.parametrize("rho", [0.05, 0.3, 0.7])
    def test_inverse_of_critical_alpha(self, rho):
        assert critical_rho(PNorm.L1, critical_alpha(PNorm.L1, rho)) == pytest.approx(rho, abs=1e-8)

    def test_l0_and_l2(self):
        assert critical_rho(PNorm.L0, 0.4) == 0.4
        with pytest.raises(NoSolution):
            critical_rho(PNorm.L2, 0.4)

    def test_density_near_one(self):
        """Test alpha_c just below 1 maps back to a density above 0.999"""
        rho = critical_rho(PNorm.L1, 0.99999992)
        assert 0.999 < rho < 1.0
        assert critical_alpha(PNorm.L1, rho) == pytest.approx(0.99999992, abs=1e-9)


class TestL1ChiHat:
    def test_just_above_threshold(self):
        chi_hat = solve_l1_chi_hat(critical_alpha(PNorm.L1, 0.5) + 1e-9, 0.5)
        assert math.isfinite(chi_hat)
        assert chi_hat == pytest.approx(critical_chi_hat(0.5), rel=1e-2)

    def test_full_density_has_no_solution(self):
        with pytest.raises(NoSolution):
            solve_l1_chi_hat(1.0, 1.0)

    def test_branch_alpha_inverts_the_solve(self):
        chi_hat = solve_l1_chi_hat(0.9, 0.5)
        assert successful_branch_alpha(chi_hat, 0.5) == pytest.approx(0.9, rel=1e-9)


class TestAtBoundary:
    @pytest.mark.parametrize("rho", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_l1_stability_edge_is_the_threshold(self, rho):
        """Test the AT-instability point of the successful branch coincides with alpha_c"""
        assert at_boundary(PNorm.L1, rho) == pytest.approx(critical_alpha(PNorm.L1, rho), abs=1e-6)

    def test_located_by_the_stability_check(self, monkeypatch):
        """Test a stability check that never fires leaves no crossing to find"""
        monkeypatch.setattr(thresholds, "at_stability",
                            lambda *args: PhaseVerdict(rs_stable=True, at_condition_lhs=0.0))
        with pytest.raises(ConvergenceFailure):
            at_boundary(PNorm.L1, 0.5)

    def test_lhs_approaches_one_from_below(self):
        alpha = critical_alpha(PNorm.L1, 0.5) + 1e-8
        params = RsOrderParams.successful(0.5, solve_l1_chi_hat(alpha, 0.5))
        verdict = at_stability(PNorm.L1, alpha, 0.5, params)
        assert verdict.rs_stable
        assert 1.0 - 1e-3 < verdict.at_condition_lhs <= 1.0

    def test_larger_root_is_unstable(self):
        rho, alpha = 0.5, 0.9
        larger = find_root(lambda x: successful_branch_alpha(x, rho) - alpha, critical_chi_hat(rho), 1e8)
        assert larger > solve_l1_chi_hat(alpha, rho)
        verdict = at_stability(PNorm.L1, alpha, rho, RsOrderParams.successful(rho, larger))
        assert not verdict.rs_stable
        assert verdict.at_condition_lhs > 1.0

    def test_trivial_norms(self):
        assert at_boundary(PNorm.L0, 0.3) == 0.3
        assert at_boundary(PNorm.L2, 0.3) == 1.0


class TestWorstCase:
    @pytest.mark.parametrize("rho", [0.001, 0.003, 0.005, 0.008])
    def test_matches_closed_form(self, rho):
        assert worst_case_l1_alpha(rho) == pytest.approx(_worst_case_closed_form(rho), rel=1e-9)

    def test_reference_value(self):
        assert worst_case_l1_alpha(0.005) == pytest.approx(5.2813, abs=1e-3)

    @pytest.mark.parametrize("rho", [0.001, 0.005, 0.009])
    def test_dominates_typical_threshold(self, rho):
        alpha = worst_case_l1_alpha(rho)
        assert alpha > critical_alpha(PNorm.L1, rho)
        assert alpha > 2 * rho / WORST_CASE_MARGIN ** 2

    def test_cap(self):
        with pytest.raises(NoSolution):
            worst_case_l1_alpha(0.05)
        with pytest.raises(NoSolution):
            worst_case_l1_alpha(0.5)
        with pytest.raises(ValueError):
            worst_case_l1_alpha(0.0)


class TestThresholdCurve:
    def test_l1_curve_is_increasing(self):
        curve = threshold_curve(PNorm.L1, RHO_GRID)
        assert not curve.gaps
        assert curve.rhos == RHO_GRID
        assert np.all(np.diff(curve.alphas) > 0)

    def test_worst_case_curve_records_gaps(self):
        curve = threshold_curve(PNorm.L1, [0.002, 0.005, 0.2, 0.6], method=CurveMethod.WORST_CASE)
        assert curve.rhos == [0.002, 0.005]
        assert [rho for rho, _ in curve.gaps] == [0.2, 0.6]

    def test_validation(self):
        with pytest.raises(ValueError):
            threshold_curve(PNorm.L1, [0.3, 0.2])
        with pytest.raises(ValueError):
            threshold_curve(PNorm.L2, [0.1], method=CurveMethod.WORST_CASE)


class TestMse:
    def test_l1_curve(self):
        points, gaps = mse_curve(PNorm.L1, 0.5, [0.6, 0.7, 0.9, 0.95])
        assert not gaps
        by_alpha = {point.alpha: point for point in points}
        assert by_alpha[0.6].branch == "failure"
        assert by_alpha[0.6].mse > by_alpha[0.7].mse > 0.0
        assert by_alpha[0.9].branch == "success"
        assert by_alpha[0.9].mse == pytest.approx(0.0, abs=1e-12)
        assert by_alpha[0.95].rs_stable

    def test_l2_failure_values(self):
        points, _ = mse_curve(PNorm.L2, 0.3, [0.25, 0.5])
        for point in points:
            assert point.mse == pytest.approx(0.3 * (1 - point.alpha), abs=1e-8)

    def test_minimized_norm(self):
        assert minimized_norm(PNorm.L1, 0.5) == pytest.approx(0.5 * math.sqrt(2 / math.pi))
        assert minimized_norm(PNorm.L1, 0.5, NonzeroLaw.parse("pm1")) == pytest.approx(0.5)
        assert minimized_norm(PNorm.L0, 0.2) == 0.2
