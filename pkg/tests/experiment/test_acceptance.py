"""
Desk-scale comparisons between Monte Carlo sweeps and the replica
predictions. The threshold sweeps take tens of minutes each on a worker
pool; run with `python tests/run_tests.py --slow`.
"""

import pytest

from src.ensembles import MatrixEnsemble, SignalPrior
from src.experiment import (
    SweepConfig,
    estimate_critical_alpha,
    estimate_mse,
    extrapolate_to_infinite_n,
    mean_objective,
    parse_progression,
    run_trials,
)
from src.replica import PNorm, SaddleOptions, critical_alpha, minimized_norm, predicted_mse, solve_rs_saddle

pytestmark = pytest.mark.slow


def _intercept(ensemble):
    sweep = SweepConfig(rho=0.5, n_values=parse_progression("10,12,...,30"), trials_per_point=10_000,
                        ensemble=ensemble, master_seed=7)
    records = run_trials(sweep, progress=False)
    estimates = [estimate_critical_alpha(records, sweep.rho, n) for n in sweep.n_values]
    return extrapolate_to_infinite_n(estimates)


@pytest.fixture(scope="module")
def gaussian_intercept():
    return _intercept(MatrixEnsemble.IID_GAUSSIAN)


def test_extrapolated_threshold_matches_theory(gaussian_intercept):
    assert gaussian_intercept == pytest.approx(critical_alpha(PNorm.L1, 0.5), abs=0.01)


def test_orthogonal_ensemble_gives_same_threshold(gaussian_intercept):
    assert _intercept(MatrixEnsemble.ROW_ORTHOGONAL) == pytest.approx(gaussian_intercept, abs=0.01)


def test_minimized_norm_matches_theory():
    sweep = SweepConfig(rho=0.2, n_values=[60], trials_per_point=100, p_values=[45], master_seed=9)
    records = run_trials(sweep, progress=False)
    assert sum(record.success for record in records) >= 95
    assert mean_objective(records) == pytest.approx(minimized_norm(PNorm.L1, 0.2), abs=0.02)


def test_failure_mse_matches_theory():
    params = solve_rs_saddle(PNorm.L1, 0.6, 0.5, options=SaddleOptions(branch="failure"))
    mean, stderr = estimate_mse(MatrixEnsemble.IID_GAUSSIAN, SignalPrior(rho=0.5), n=100, p_rows=60,
                                trials=50, seed=13)
    assert mean == pytest.approx(predicted_mse(params, 0.5), rel=0.2)
    assert stderr < 0.1 * mean
