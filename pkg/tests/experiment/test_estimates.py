"""
Tests for critical-rate estimation and the finite-size extrapolation
"""

import math

import pytest

from src.errors import NoBracket
from src.experiment import (
    CriticalPointEstimate,
    TrialRecord,
    estimate_critical_alpha,
    extrapolate_to_infinite_n,
    finite_size_fit,
    mean_objective,
    success_table,
)


def _records(n, rates, trials):
    """Synthetic records: `rates` maps P to its success fraction"""
    records = []
    for p_rows, rate in rates.items():
        successes = round(rate * trials)
        for index in range(trials):
            records.append(TrialRecord(n=n, p_rows=p_rows, trial_index=index, seed=index,
                                       success=index < successes, objective=float(p_rows),
                                       residual=0.0, status="optimal"))
    return records


def _estimate(n, alpha):
    return CriticalPointEstimate(rho=0.5, n=n, alpha_c_n=alpha, stderr=0.001)


class TestCrossing:
    def test_linear_interpolation(self):
        estimate = estimate_critical_alpha(_records(16, {10: 0.2, 11: 0.8}, 100), 0.5, 16)
        assert estimate.alpha_c_n == pytest.approx(0.65625)
        assert estimate.trials_total == 200
        assert estimate.points == [(10, 20, 100), (11, 80, 100)]

    def test_stderr_value_and_scaling(self):
        small = estimate_critical_alpha(_records(16, {10: 0.2, 11: 0.8}, 100), 0.5, 16)
        large = estimate_critical_alpha(_records(16, {10: 0.2, 11: 0.8}, 1000), 0.5, 16)
        derivative = 0.3 / (0.36 * 16)
        assert small.stderr == pytest.approx(math.sqrt(2 * derivative ** 2 * 0.16 / 100))
        assert small.stderr / large.stderr == pytest.approx(math.sqrt(10))

    def test_first_straddling_pair(self):
        """Test a non-monotone table uses the first crossing"""
        records = _records(20, {12: 0.1, 13: 0.6, 14: 0.4, 15: 0.9}, 100)
        estimate = estimate_critical_alpha(records, 0.5, 20)
        assert estimate.alpha_c_n == pytest.approx((12 + 0.4 / 0.5) / 20)

    def test_exact_half_closes_the_bracket(self):
        estimate = estimate_critical_alpha(_records(10, {6: 0.3, 7: 0.5, 8: 0.9}, 100), 0.5, 10)
        assert estimate.alpha_c_n == pytest.approx(0.7)

    def test_no_bracket(self):
        with pytest.raises(NoBracket):
            estimate_critical_alpha(_records(10, {6: 0.6, 7: 0.9}, 100), 0.5, 10)
        with pytest.raises(NoBracket):
            estimate_critical_alpha(_records(10, {6: 0.1, 7: 0.4}, 100), 0.5, 10)
        with pytest.raises(NoBracket):
            estimate_critical_alpha(_records(10, {6: 0.1}, 100), 0.5, 10)

    def test_success_table_filters_n(self):
        records = _records(10, {6: 0.5}, 100) + _records(12, {6: 1.0}, 100)
        assert success_table(records, 12) == [(6, 100, 100)]


class TestExtrapolation:
    def test_exact_quadratic(self):
        estimates = [_estimate(n, 0.8 + 1.5 / n - 3.0 / n ** 2) for n in (10, 14, 18, 22)]
        c0, c1, c2 = finite_size_fit(estimates)
        assert c0 == pytest.approx(0.8, abs=1e-10)
        assert c1 == pytest.approx(1.5, abs=1e-8)
        assert c2 == pytest.approx(-3.0, abs=1e-6)
        assert extrapolate_to_infinite_n(estimates) == pytest.approx(0.8, abs=1e-10)

    def test_needs_four_sizes(self):
        estimates = [_estimate(n, 0.8) for n in (10, 14, 18, 18)]
        with pytest.raises(ValueError):
            finite_size_fit(estimates)


class TestMeanObjective:
    def test_successes_only(self):
        records = _records(10, {4: 0.0, 8: 1.0}, 100)
        assert mean_objective(records) == pytest.approx(0.8)

    def test_requires_a_success(self):
        with pytest.raises(ValueError):
            mean_objective(_records(10, {4: 0.0}, 100))
