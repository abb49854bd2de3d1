"""
Monte Carlo experiments on L1 reconstruction: seeded sweeps, critical-rate
estimation, finite-size extrapolation and CSV persistence.
"""

from .sweep import SweepConfig, alpha_window, load_sweep_config, parse_progression, sweep_config_from_mapping
from .trials import ERROR_STATUS, TrialRecord, iter_trials, run_trials, trial_keys
from .estimates import (
    CriticalPointEstimate,
    estimate_critical_alpha,
    estimate_mse,
    extrapolate_to_infinite_n,
    finite_size_fit,
    mean_objective,
    success_table,
)
from .storage import (
    ESTIMATES_HEADER,
    TRIALS_HEADER,
    TrialWriter,
    load_estimates,
    load_trials,
    prepare_resume,
    save_estimates,
    save_trials,
)

__all__ = [
    "SweepConfig",
    "alpha_window",
    "load_sweep_config",
    "parse_progression",
    "sweep_config_from_mapping",
    "ERROR_STATUS",
    "TrialRecord",
    "iter_trials",
    "run_trials",
    "trial_keys",
    "CriticalPointEstimate",
    "estimate_critical_alpha",
    "estimate_mse",
    "extrapolate_to_infinite_n",
    "finite_size_fit",
    "mean_objective",
    "success_table",
    "ESTIMATES_HEADER",
    "TRIALS_HEADER",
    "TrialWriter",
    "load_estimates",
    "load_trials",
    "prepare_resume",
    "save_estimates",
    "save_trials",
]
