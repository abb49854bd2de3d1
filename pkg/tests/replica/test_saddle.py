"""
Tests for the RS free energy, the saddle-point solver and AT stability
"""

import math
import unittest

import numpy as np
import pytest
from scipy import integrate

from src.errors import ConvergenceFailure, NoSolution
from src.numerics import gaussian_quadrature
from src.replica import (
    PNorm,
    RsOrderParams,
    SaddleOptions,
    at_stability,
    phi_p,
    predicted_mse,
    rs_free_energy,
    saddle_residuals,
    solve_l1_chi_hat,
    solve_rs_saddle,
    successful_params,
)

_FIELDS = ("Q", "chi", "m", "Q_hat", "chi_hat", "m_hat")


def _finite_difference_gradient(p, alpha, rho, params, rel_step=1e-6):
    gradient = []
    base = params.to_dict()
    for name in _FIELDS:
        step = rel_step * max(1.0, abs(base[name]))
        up, down = dict(base), dict(base)
        up[name] += step
        down[name] -= step
        gradient.append((rs_free_energy(p, alpha, rho, RsOrderParams(**up))
                         - rs_free_energy(p, alpha, rho, RsOrderParams(**down))) / (2 * step))
    return np.array(gradient)


def _adaptive_objective(p, alpha, rho, params):
    """Free energy with both Gaussian averages done by adaptive quadrature"""
    def average(width):
        value, _ = integrate.quad(
            lambda z: phi_p(p, width * z, params.Q_hat) * math.exp(-0.5 * z * z) / math.sqrt(2 * math.pi),
            -np.inf, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200,
        )
        return value

    s0 = math.sqrt(params.chi_hat)
    s1 = math.sqrt(params.chi_hat + params.m_hat ** 2)
    return (alpha * (params.Q - 2 * params.m + rho) / (2 * params.chi) + params.m_hat * params.m
            - 0.5 * params.Q_hat * params.Q + 0.5 * params.chi_hat * params.chi
            + (1 - rho) * average(s0) + rho * average(s1))


class TestPredictedMse(unittest.TestCase):
    def test_successful_values(self):
        """Test E = 0 when Q = m = rho"""
        params = RsOrderParams(Q=0.5, chi=0.0, m=0.5, Q_hat=math.inf, chi_hat=1.0, m_hat=math.inf)
        self.assertEqual(predicted_mse(params, 0.5), 0.0)

    def test_arithmetic(self):
        params = RsOrderParams(Q=1.0, chi=1.0, m=0.0, Q_hat=1.0, chi_hat=1.0, m_hat=1.0)
        self.assertAlmostEqual(predicted_mse(params, 0.5), 1.5)

    def test_negative_value_is_not_hidden(self):
        """Test inconsistent parameters show up as a negative error"""
        params = RsOrderParams(Q=0.1, chi=1.0, m=0.5, Q_hat=1.0, chi_hat=1.0, m_hat=1.0)
        self.assertAlmostEqual(predicted_mse(params, 0.5), -0.4)


class TestFreeEnergy:
    params = RsOrderParams(Q=0.4, chi=0.6, m=0.3, Q_hat=1.5, chi_hat=0.8, m_hat=1.2)

    @pytest.mark.parametrize("p", list(PNorm))
    def test_closed_form_matches_adaptive_integration(self, p):
        expected = _adaptive_objective(p, 0.7, 0.5, self.params)
        assert rs_free_energy(p, 0.7, 0.5, self.params) == pytest.approx(expected, abs=1e-9)

    def test_quadrature_exact_for_l2(self):
        """Test quadratic integrands are integrated exactly by the default-order rule"""
        rule = gaussian_quadrature(200)
        closed = rs_free_energy(PNorm.L2, 0.7, 0.5, self.params)
        assert rs_free_energy(PNorm.L2, 0.7, 0.5, self.params, quadrature=rule) == pytest.approx(closed, abs=1e-10)

    @pytest.mark.parametrize("p", list(PNorm))
    def test_analytic_gradient_matches_finite_differences(self, p):
        analytic = saddle_residuals(p, 0.7, 0.5, self.params)
        numeric = _finite_difference_gradient(p, 0.7, 0.5, self.params)
        np.testing.assert_allclose(analytic, numeric, atol=1e-6)

    def test_rejects_out_of_domain(self):
        bad = RsOrderParams(Q=0.4, chi=0.0, m=0.3, Q_hat=1.5, chi_hat=0.8, m_hat=1.2)
        with pytest.raises(ValueError):
            rs_free_energy(PNorm.L1, 0.7, 0.5, bad)
        with pytest.raises(ValueError):
            rs_free_energy(PNorm.L1, 0.7, 1.5, self.params)


class TestFailureBranch:
    def test_l2_closed_form(self):
        """Test the L2 extremum below alpha = 1: chi = (1 - alpha)/2, m = rho alpha, E = rho (1 - alpha)"""
        alpha, rho = 0.5, 0.3
        params = solve_rs_saddle(PNorm.L2, alpha, rho)
        assert params.chi == pytest.approx((1 - alpha) / 2, abs=1e-9)
        assert params.m == pytest.approx(rho * alpha, abs=1e-9)
        assert predicted_mse(params, rho) == pytest.approx(rho * (1 - alpha), abs=1e-9)
        assert at_stability(PNorm.L2, alpha, rho, params).rs_stable

    @pytest.mark.parametrize("p,alpha,rho", [(PNorm.L2, 0.5, 0.3), (PNorm.L1, 0.7, 0.5), (PNorm.L1, 0.5, 0.3)])
    def test_converged_saddle_is_stationary(self, p, alpha, rho):
        """Test finite-difference gradients vanish at converged extrema"""
        params = solve_rs_saddle(p, alpha, rho, options=SaddleOptions(branch="failure"))
        gradient = _finite_difference_gradient(p, alpha, rho, params)
        assert np.max(np.abs(gradient)) <= 1e-6
        assert np.max(np.abs(saddle_residuals(p, alpha, rho, params))) <= 1e-10

    def test_l1_failure_has_positive_error(self):
        params = solve_rs_saddle(PNorm.L1, 0.7, 0.5, options=SaddleOptions(branch="failure"))
        assert not params.is_successful_branch
        assert predicted_mse(params, 0.5) > 0.0

    def test_failure_only_refuses_collapse(self):
        with pytest.raises(ConvergenceFailure):
            solve_rs_saddle(PNorm.L1, 0.95, 0.5, options=SaddleOptions(branch="failure"))

    def test_iteration_budget(self):
        with pytest.raises(ConvergenceFailure) as excinfo:
            solve_rs_saddle(PNorm.L1, 0.7, 0.5, options=SaddleOptions(branch="failure", max_iterations=3))
        assert "residual" in excinfo.value.diagnostics


class TestSuccessfulBranch:
    def test_l1_collapses_to_success(self):
        """Test the generic start reaches Q = m = rho above the threshold"""
        params = solve_rs_saddle(PNorm.L1, 0.9, 0.5)
        assert params.is_successful_branch
        assert params.Q == pytest.approx(0.5, abs=1e-8)
        assert params.m == pytest.approx(0.5, abs=1e-8)
        assert predicted_mse(params, 0.5) == pytest.approx(0.0, abs=1e-8)

    def test_chi_hat_agrees_with_root_finder(self):
        """Test the iterated chi_hat against the bracketed solve"""
        params = solve_rs_saddle(PNorm.L1, 0.9, 0.5, options=SaddleOptions(branch="success"))
        assert params.chi_hat == pytest.approx(solve_l1_chi_hat(0.9, 0.5), abs=1e-8)

    def test_l2_success_above_one(self):
        params = solve_rs_saddle(PNorm.L2, 1.5, 0.5)
        assert params.is_successful_branch
        assert params.chi_hat == pytest.approx(4 * 0.5 / 0.5, rel=1e-9)
        assert at_stability(PNorm.L2, 1.5, 0.5, params).rs_stable

    def test_successful_params_existence(self):
        with pytest.raises(NoSolution):
            successful_params(PNorm.L1, 0.7, 0.5)
        with pytest.raises(NoSolution):
            successful_params(PNorm.L2, 0.9, 0.5)
        with pytest.raises(NoSolution):
            successful_params(PNorm.L0, 0.2, 0.3)
        assert math.isinf(successful_params(PNorm.L0, 0.5, 0.3).chi_hat)


class TestAtStability:
    @pytest.mark.parametrize("alpha,rho", [(0.35, 0.3), (0.6, 0.5), (0.95, 0.9)])
    def test_l0_success_always_unstable(self, alpha, rho):
        verdict = at_stability(PNorm.L0, alpha, rho, successful_params(PNorm.L0, alpha, rho))
        assert not verdict.rs_stable
        assert verdict.note

    def test_l2_success_stable_above_one(self):
        verdict = at_stability(PNorm.L2, 1.2, 0.5, successful_params(PNorm.L2, 1.2, 0.5))
        assert verdict.rs_stable
        assert verdict.at_condition_lhs == pytest.approx(1 / 1.2)

    def test_verdict_matches_lhs(self):
        params = solve_rs_saddle(PNorm.L1, 0.7, 0.5, options=SaddleOptions(branch="failure"))
        verdict = at_stability(PNorm.L1, 0.7, 0.5, params)
        assert verdict.rs_stable == (verdict.at_condition_lhs <= 1.0)

    def test_rejects_nan(self):
        params = RsOrderParams(Q=math.nan, chi=1.0, m=0.0, Q_hat=1.0, chi_hat=1.0, m_hat=1.0)
        with pytest.raises(ValueError):
            at_stability(PNorm.L1, 0.7, 0.5, params)
