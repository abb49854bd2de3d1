"""
Replica-symmetric theory of Lp reconstruction: scalar thresholding
functions, the RS saddle point, its stability and the phase boundaries.
"""

from .norms import GaussianMoments, PNorm, gaussian_moments, hard_threshold, phi_p, x_star
from .l1 import critical_chi_hat, solve_l1_chi_hat, successful_branch_alpha, tangency_point
from .saddle import (
    PhaseVerdict,
    RsOrderParams,
    SaddleOptions,
    at_stability,
    predicted_mse,
    rs_free_energy,
    saddle_residuals,
    solve_rs_saddle,
    successful_params,
)
from .thresholds import (
    WORST_CASE_MARGIN,
    CurveMethod,
    MsePoint,
    ThresholdCurve,
    at_boundary,
    critical_alpha,
    critical_rho,
    minimized_norm,
    mse_curve,
    threshold_curve,
    worst_case_l1_alpha,
)

__all__ = [
    "GaussianMoments",
    "PNorm",
    "gaussian_moments",
    "hard_threshold",
    "phi_p",
    "x_star",
    "critical_chi_hat",
    "solve_l1_chi_hat",
    "successful_branch_alpha",
    "tangency_point",
    "PhaseVerdict",
    "RsOrderParams",
    "SaddleOptions",
    "at_stability",
    "predicted_mse",
    "rs_free_energy",
    "saddle_residuals",
    "solve_rs_saddle",
    "successful_params",
    "WORST_CASE_MARGIN",
    "CurveMethod",
    "MsePoint",
    "ThresholdCurve",
    "at_boundary",
    "critical_alpha",
    "critical_rho",
    "minimized_norm",
    "mse_curve",
    "threshold_curve",
    "worst_case_l1_alpha",
]
