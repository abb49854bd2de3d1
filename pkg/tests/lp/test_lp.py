"""
Tests for the basis-pursuit simplex solver, the brute-force oracle and the
success criterion
"""

import numpy as np
import pytest

from src.ensembles import MatrixEnsemble, SignalPrior, make_instance, make_rng, sample_matrix
from src.lp import (
    LpOptions,
    LpStatus,
    basis_pursuit,
    brute_force_l1_min,
    reconstruction_error,
    reconstruction_success,
)


def _random_instances(count, seed, max_n=8, max_p=6):
    rng = np.random.default_rng(seed)
    ensembles = list(MatrixEnsemble)
    for index in range(count):
        n = int(rng.integers(2, max_n + 1))
        p_rows = int(rng.integers(1, min(max_p, n) + 1))
        rho = float(rng.uniform(0.1, 0.9))
        yield make_instance(ensembles[index % 2], n, p_rows, SignalPrior(rho=rho), seed=int(rng.integers(2 ** 32)))


class TestBasisPursuit:
    def test_square_orthogonal_recovers_signal(self):
        F = sample_matrix(MatrixEnsemble.ROW_ORTHOGONAL, 12, 12, make_rng(1))
        x0 = make_rng(2).standard_normal(12)
        solution = basis_pursuit(F, F @ x0)
        assert solution.status is LpStatus.OPTIMAL
        np.testing.assert_allclose(solution.x_hat, x0, atol=1e-9)
        assert reconstruction_success(solution.x_hat, x0)

    def test_zero_measurements(self):
        F = sample_matrix(MatrixEnsemble.IID_GAUSSIAN, 4, 9, make_rng(3))
        solution = basis_pursuit(F, np.zeros(4))
        assert solution.is_optimal
        assert solution.objective == 0.0
        np.testing.assert_array_equal(solution.x_hat, np.zeros(9))

    def test_sparse_signal_well_above_threshold(self):
        instance = make_instance(MatrixEnsemble.IID_GAUSSIAN, 40, 30, SignalPrior(rho=0.1), seed=17)
        solution = basis_pursuit(instance.F, instance.y)
        assert solution.is_optimal
        assert reconstruction_success(solution.x_hat, instance.x0)

    @pytest.mark.parametrize("seed", range(20))
    def test_dual_certificate(self, seed):
        """Test dual feasibility and strong duality at the returned optimum"""
        instance = make_instance(MatrixEnsemble.IID_GAUSSIAN, 20, 12, SignalPrior(rho=0.4), seed=seed)
        solution = basis_pursuit(instance.F, instance.y)
        assert solution.is_optimal
        assert np.max(np.abs(instance.F.T @ solution.dual)) <= 1 + 1e-8
        assert float(instance.y @ solution.dual) == pytest.approx(solution.objective, abs=1e-8)
        assert solution.residual <= 1e-9

    @pytest.mark.parametrize("seed", range(20))
    def test_objective_never_exceeds_truth(self, seed):
        instance = make_instance(MatrixEnsemble.ROW_ORTHOGONAL, 24, 10, SignalPrior(rho=0.6), seed=seed)
        solution = basis_pursuit(instance.F, instance.y)
        assert solution.objective <= np.sum(np.abs(instance.x0)) + 1e-9

    def test_scaling(self):
        instance = make_instance(MatrixEnsemble.IID_GAUSSIAN, 16, 9, SignalPrior(rho=0.3), seed=8)
        base = basis_pursuit(instance.F, instance.y)
        scaled = basis_pursuit(instance.F, 1e3 * instance.y)
        assert scaled.objective == pytest.approx(1e3 * base.objective, rel=1e-8)

    def test_inconsistent_system(self):
        F = np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        assert basis_pursuit(F, np.array([1.0, 2.0])).status is LpStatus.INFEASIBLE

    def test_redundant_rows(self):
        F = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0]])
        solution = basis_pursuit(F, np.array([1.0, 2.0]))
        assert solution.is_optimal
        assert solution.objective == pytest.approx(1.0)
        np.testing.assert_allclose(F @ solution.x_hat, [1.0, 2.0], atol=1e-12)

    def test_iteration_limit(self):
        instance = make_instance(MatrixEnsemble.IID_GAUSSIAN, 8, 4, SignalPrior(rho=1.0), seed=21)
        solution = basis_pursuit(instance.F, instance.y, LpOptions(max_pivots=1))
        assert solution.status is LpStatus.ITERATION_LIMIT
        assert solution.iterations == 1

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            basis_pursuit(np.ones((3, 2)), np.ones(3))
        with pytest.raises(ValueError):
            basis_pursuit(np.ones((2, 4)), np.ones(3))


class TestOracle:
    def test_tie_goes_to_first_subset(self):
        solution = brute_force_l1_min(np.array([[1.0, 1.0]]), np.array([1.0]))
        np.testing.assert_array_equal(solution.x_hat, [1.0, 0.0])

    def test_prefers_shared_column(self):
        F = np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
        solution = brute_force_l1_min(F, np.array([1.0, 1.0]))
        np.testing.assert_allclose(solution.x_hat, [0.0, 0.0, 1.0])
        assert basis_pursuit(F, np.array([1.0, 1.0])).objective == pytest.approx(1.0)

    def test_inconsistent(self):
        F = np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        assert brute_force_l1_min(F, np.array([1.0, 2.0])).status is LpStatus.INFEASIBLE

    def test_size_limit(self):
        with pytest.raises(ValueError):
            brute_force_l1_min(np.ones((2, 15)), np.ones(2))

    def test_agrees_with_simplex(self):
        for instance in _random_instances(150, seed=99):
            expected = brute_force_l1_min(instance.F, instance.y)
            actual = basis_pursuit(instance.F, instance.y)
            assert actual.is_optimal
            assert actual.objective == pytest.approx(expected.objective, abs=1e-8)

    @pytest.mark.slow
    def test_agrees_with_simplex_exhaustive(self):
        for instance in _random_instances(1000, seed=2024):
            expected = brute_force_l1_min(instance.F, instance.y)
            actual = basis_pursuit(instance.F, instance.y)
            assert actual.is_optimal
            assert actual.objective == pytest.approx(expected.objective, abs=1e-8)


class TestSuccessCriterion:
    def test_relative_to_signal_norm(self):
        assert reconstruction_success(np.array([3.0, 4.0004]), np.array([3.0, 4.0]))
        assert not reconstruction_success(np.array([3.0, 4.001]), np.array([3.0, 4.0]))

    def test_absolute_for_small_signals(self):
        assert reconstruction_error(np.array([0.1002, 0.0]), np.array([0.1, 0.0])) == pytest.approx(2e-4)
        assert not reconstruction_success(np.array([0.1002, 0.0]), np.array([0.1, 0.0]))

    def test_validation(self):
        with pytest.raises(ValueError):
            reconstruction_success(np.zeros(2), np.zeros(2), tol=0.0)
        with pytest.raises(ValueError):
            reconstruction_error(np.zeros(2), np.zeros(3))

    def test_insensitive_to_tolerance(self):
        """Test successes and failures are separated by orders of magnitude near the threshold"""
        prior = SignalPrior(rho=0.5)
        for seed in range(300):
            instance = make_instance(MatrixEnsemble.IID_GAUSSIAN, 16, 13, prior, seed=seed)
            x_hat = basis_pursuit(instance.F, instance.y).x_hat
            assert reconstruction_success(x_hat, instance.x0, tol=1e-6) == \
                reconstruction_success(x_hat, instance.x0, tol=1e-2)
