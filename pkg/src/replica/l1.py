"""
The L1 successful branch: the chi_hat self-consistency and its stability
boundary, both written in terms of the Gaussian tail function.
"""

import math
from typing import Tuple

from loguru import logger

from config import config
from ..errors import ConvergenceFailure, NoBracket, NoSolution
from ..numerics import find_root, gaussian_pdf, q_function, q_function_inverse

logger = logger.bind(name="ReplicaL1")


def _validate(alpha: float, rho: float) -> None:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not 0 < rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")


def soft_threshold_excess(chi_hat: float) -> float:
    """E[(|h| - 1)^2; |h| > 1] for h ~ N(0, chi_hat)"""
    if chi_hat <= 0:
        return 0.0
    root = math.sqrt(chi_hat)
    t = 1.0 / root
    return 2.0 * ((chi_hat + 1.0) * q_function(t) - root * gaussian_pdf(t))


def chi_hat_map(chi_hat: float, alpha: float, rho: float) -> float:
    """Right-hand side of the chi_hat self-consistency"""
    return ((1.0 - rho) * soft_threshold_excess(chi_hat) + rho * (chi_hat + 1.0)) / alpha


def stability_alpha(chi_hat: float, rho: float) -> float:
    """2(1 - rho) Q(chi_hat^{-1/2}) + rho; also the slope of alpha * chi_hat_map"""
    if chi_hat <= 0:
        return rho
    return 2.0 * (1.0 - rho) * q_function(1.0 / math.sqrt(chi_hat)) + rho


def solve_l1_chi_hat(alpha: float, rho: float, tol: float = None) -> float:
    """
    Smallest positive chi_hat with chi_hat = chi_hat_map(chi_hat).

    alpha * chi_hat_map is convex in chi_hat with slope stability_alpha, so
    g(x) = alpha * (chi_hat_map(x) - x) starts at rho > 0 and decreases up to
    the tangency point where the slope reaches alpha. A root exists iff g is
    negative there, and the smaller root is the stable one.
    """
    _validate(alpha, rho)
    tol = tol or config.ROOT_TOL
    lower, upper = config.CHI_HAT_BRACKET

    def g(x: float) -> float:
        return alpha * (chi_hat_map(x, alpha, rho) - x)

    if alpha <= rho:
        raise NoSolution(f"no successful L1 solution for alpha={alpha} <= rho={rho}")

    slope_target = (alpha - rho) / (2.0 * (1.0 - rho)) if rho < 1 else math.inf
    if slope_target >= 0.5:
        # slope stays below alpha for every chi_hat; g decreases monotonically
        tangency = upper
    else:
        tangency = 1.0 / q_function_inverse(slope_target) ** 2

    if g(tangency) >= 0:
        raise NoSolution(
            f"chi_hat equation has no root at alpha={alpha}, rho={rho} "
            f"(minimum residual {g(tangency):.3g} at chi_hat={tangency:.3g})"
        )

    try:
        root = find_root(g, 0.0, tangency, tol=tol)
    except NoBracket as exc:
        raise NoSolution(str(exc)) from exc

    if root < lower:
        logger.debug(f"chi_hat={root:.3g} below nominal bracket at alpha={alpha}, rho={rho}")
    return root


def critical_chi_hat(rho: float, tol: float = None) -> float:
    """chi_hat at which the stability condition holds with equality"""
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    tol = tol or config.ROOT_TOL
    lower, upper = config.CHI_HAT_BRACKET

    # chi_hat_map(x) * alpha - x * alpha evaluated at alpha = stability_alpha(x)
    def tangency_residual(log_chi_hat: float) -> float:
        t = math.exp(-0.5 * log_chi_hat)
        return 2.0 * (1.0 - rho) * (q_function(t) - gaussian_pdf(t) / t) + rho

    try:
        log_root = find_root(tangency_residual, math.log(lower), math.log(upper), tol=tol)
    except NoBracket as exc:
        raise ConvergenceFailure(
            "cannot bracket the L1 critical point",
            {"rho": rho, "bracket": (lower, upper),
             "residual_lo": tangency_residual(math.log(lower)),
             "residual_hi": tangency_residual(math.log(upper))},
        ) from exc
    return math.exp(log_root)


def successful_branch_alpha(chi_hat: float, rho: float) -> float:
    """alpha at which chi_hat solves the successful-branch self-consistency"""
    if not chi_hat > 0:
        raise ValueError(f"chi_hat must be positive, got {chi_hat}")
    return ((1.0 - rho) * soft_threshold_excess(chi_hat) + rho * (chi_hat + 1.0)) / chi_hat


def tangency_point(threshold: float) -> Tuple[float, float]:
    """
    (rho, alpha_c) of the critical point whose soft threshold sits at
    `threshold` standard deviations of the field, t = chi_hat^{-1/2}.

    With D = phi(t)/t - Q(t) the tangency gives rho = 2D / (1 + 2D) and
    alpha_c = (2 phi(t)/t) / (1 + 2D); both decrease in t.
    """
    if not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    ratio = gaussian_pdf(threshold) / threshold
    excess = 2.0 * (ratio - q_function(threshold))
    return excess / (1.0 + excess), 2.0 * ratio / (1.0 + excess)
