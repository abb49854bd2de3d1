"""
Phase boundaries alpha_c(rho): the replica thresholds for L0/L1/L2, the
worst-case sufficient condition for L1, curves over rho-grids and predicted
MSE curves over alpha-grids.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from loguru import logger

from config import config
from ..ensembles.priors import NonzeroLaw
from ..errors import ConvergenceFailure, LpThresholdError, NoBracket, NoSolution
from ..numerics import find_root
from .l1 import critical_chi_hat, stability_alpha, successful_branch_alpha, tangency_point
from .norms import PNorm
from .saddle import (
    RsOrderParams,
    SaddleOptions,
    at_stability,
    predicted_mse,
    solve_rs_saddle,
    successful_params,
)

logger = logger.bind(name="Thresholds")

# 2^(1/4) - 1, the restricted-isometry margin in the worst-case bound
WORST_CASE_MARGIN = 2.0 ** 0.25 - 1.0

# soft threshold, in field standard deviations, searched by critical_rho
_THRESHOLD_SEARCH = (1e-6, 30.0)


class CurveMethod(Enum):
    """How a threshold curve is computed"""
    REPLICA = "replica"
    WORST_CASE = "worst_case"


@dataclass
class ThresholdCurve:
    """alpha_c over a rho-grid, with the grid points that failed"""
    p: PNorm
    method: CurveMethod
    points: List[Tuple[float, float]] = field(default_factory=list)
    gaps: List[Tuple[float, str]] = field(default_factory=list)

    @property
    def rhos(self) -> List[float]:
        return [rho for rho, _ in self.points]

    @property
    def alphas(self) -> List[float]:
        return [alpha for _, alpha in self.points]


def _check_rho(rho: float) -> None:
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")


def critical_alpha(p: PNorm, rho: float) -> float:
    """Typical reconstruction limit alpha_c(rho)"""
    _check_rho(rho)
    if p is PNorm.L0:
        return rho
    if p is PNorm.L2:
        return 1.0
    chi_hat = critical_chi_hat(rho)
    return stability_alpha(chi_hat, rho)


def critical_rho(p: PNorm, alpha: float) -> float:
    """Largest density reconstructible at compression rate alpha"""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if p is PNorm.L0:
        return alpha
    if p is PNorm.L2:
        raise NoSolution(f"L2 reconstruction cannot succeed below alpha=1 (got alpha={alpha})")

    # walk the critical line by its threshold; rho near 1 needs chi_hat far
    # beyond what critical_chi_hat brackets
    lo, hi = _THRESHOLD_SEARCH
    try:
        log_t = find_root(lambda s: tangency_point(math.exp(s))[1] - alpha, math.log(lo), math.log(hi), tol=1e-14)
    except NoBracket as exc:
        raise NoSolution(f"alpha_c = {alpha} lies outside the critical line for thresholds in [{lo}, {hi}]") from exc
    return tangency_point(math.exp(log_t))[0]


def worst_case_l1_alpha(rho: float, cap: Optional[float] = None) -> float:
    """
    Smallest alpha meeting both worst-case sufficient conditions in the
    N -> infinity limit (rho = S/N, alpha = P/N):

        2 rho ln(1/(2 rho)) + 2 rho - (alpha/2)(m - sqrt(2 rho/alpha))^2 < 0
        m - sqrt(2 rho/alpha) > 0,          m = 2^(1/4) - 1
    """
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    if rho >= 0.5:
        raise NoSolution(f"worst-case bound needs rho < 0.5, got {rho}")
    cap = config.WORST_CASE_ALPHA_CAP if cap is None else cap

    entropy = 2.0 * rho * math.log(1.0 / (2.0 * rho)) + 2.0 * rho
    alpha_min = 2.0 * rho / WORST_CASE_MARGIN ** 2
    if alpha_min >= cap:
        raise NoSolution(f"margin condition needs alpha > {alpha_min:.4g} beyond cap {cap}")

    def bound(alpha: float) -> float:
        gap = WORST_CASE_MARGIN - math.sqrt(2.0 * rho / alpha)
        return entropy - 0.5 * alpha * gap * gap

    if bound(cap) >= 0:
        raise NoSolution(f"worst-case bound not met for any alpha <= {cap} at rho={rho}")
    return find_root(bound, alpha_min, cap, tol=1e-13)


def threshold_curve(p: PNorm, rho_grid: Sequence[float],
                    method: CurveMethod = CurveMethod.REPLICA) -> ThresholdCurve:
    """Evaluate alpha_c over a sorted rho-grid, recording failures as gaps"""
    rho_grid = list(rho_grid)
    if any(not 0 < rho < 1 for rho in rho_grid):
        raise ValueError("rho grid values must lie in (0, 1)")
    if any(b < a for a, b in zip(rho_grid, rho_grid[1:])):
        raise ValueError("rho grid must be sorted ascending")
    if method is CurveMethod.WORST_CASE and p is not PNorm.L1:
        raise ValueError("the worst-case bound is defined for L1 only")

    curve = ThresholdCurve(p=p, method=method)
    for rho in rho_grid:
        try:
            if method is CurveMethod.WORST_CASE:
                alpha = worst_case_l1_alpha(rho)
            else:
                alpha = critical_alpha(p, rho)
        except LpThresholdError as exc:
            logger.warning(f"{p.name} {method.value} curve: gap at rho={rho}: {exc}")
            curve.gaps.append((rho, str(exc)))
            continue
        curve.points.append((rho, alpha))

    logger.info(f"{p.name} {method.value} curve: {len(curve.points)} points, {len(curve.gaps)} gaps")
    return curve


def at_boundary(p: PNorm, rho: float) -> float:
    """
    alpha at which the successful branch turns AT-unstable.

    The L1 branch is followed by chi_hat: every chi_hat > 0 solves the
    self-consistency at alpha = successful_branch_alpha(chi_hat). Small
    chi_hat (the stable root) has AT lhs < 1 and large chi_hat (the unstable
    root) has lhs > 1, so the crossing lhs = 1 is bracketed on log chi_hat.
    """
    _check_rho(rho)
    if p is PNorm.L0:
        # successful branch exists above rho but is never RS-stable
        return rho
    if p is PNorm.L2:
        return 1.0

    def excess(log_chi_hat: float) -> float:
        chi_hat = math.exp(log_chi_hat)
        alpha = successful_branch_alpha(chi_hat, rho)
        verdict = at_stability(p, alpha, rho, RsOrderParams.successful(rho, chi_hat))
        return verdict.at_condition_lhs - 1.0

    lower, upper = config.CHI_HAT_BRACKET
    try:
        log_root = find_root(excess, math.log(lower), math.log(upper), tol=config.ROOT_TOL)
    except NoBracket as exc:
        raise ConvergenceFailure(
            "cannot bracket the AT crossing of the successful branch",
            {"rho": rho, "bracket": (lower, upper)},
        ) from exc
    return successful_branch_alpha(math.exp(log_root), rho)


def minimized_norm(p: PNorm, rho: float, law: NonzeroLaw = NonzeroLaw.STANDARD_GAUSSIAN) -> float:
    """Minimised Lp norm per element when the reconstruction succeeds"""
    if not 0 < rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    if p is PNorm.L1:
        return rho * law.mean_abs
    # |x|^0 counts non-zeros; |x|^2 has unit mean on the support
    return rho


@dataclass(frozen=True)
class MsePoint:
    """Predicted reconstruction error at one compression rate"""
    alpha: float
    mse: float
    branch: str
    rs_stable: bool
    at_lhs: float


def mse_curve(p: PNorm, rho: float, alpha_grid: Sequence[float],
              options: Optional[SaddleOptions] = None) -> Tuple[List[MsePoint], List[Tuple[float, str]]]:
    """Predicted MSE over an alpha-grid: zero above alpha_c, failure branch below"""
    _check_rho(rho)
    threshold = critical_alpha(p, rho)
    points: List[MsePoint] = []
    gaps: List[Tuple[float, str]] = []
    guess = RsOrderParams.failure_guess(rho)

    for alpha in alpha_grid:
        try:
            if alpha > threshold:
                params = successful_params(p, alpha, rho)
                branch = "success"
            else:
                failure_options = options or SaddleOptions(branch="failure")
                params = solve_rs_saddle(p, alpha, rho, init=guess, options=failure_options)
                guess = params
                branch = "failure"
        except (NoSolution, ConvergenceFailure) as exc:
            logger.warning(f"{p.name} MSE curve: gap at alpha={alpha}: {exc}")
            gaps.append((alpha, str(exc)))
            continue
        verdict = at_stability(p, alpha, rho, params)
        points.append(MsePoint(alpha=alpha, mse=predicted_mse(params, rho), branch=branch,
                               rs_stable=verdict.rs_stable, at_lhs=verdict.at_condition_lhs))
    return points, gaps
