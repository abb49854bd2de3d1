"""
Replica-symmetric saddle point of the Lp reconstruction free energy.

The objective (zero-temperature, RS) is

    C = alpha (Q - 2m + rho) / (2 chi) + m_hat m - Q_hat Q / 2 + chi_hat chi / 2
        + (1 - rho) E[phi_p(sqrt(chi_hat) z; Q_hat)]
        + rho E[phi_p(sqrt(chi_hat + m_hat^2) z; Q_hat)]

Differentiating gives the six stationarity conditions

    Q_hat = alpha / chi                     m_hat = alpha / chi
    chi_hat = alpha (Q - 2m + rho) / chi^2
    Q   = (1 - rho) E[x*^2]_0 + rho E[x*^2]_1
    chi = (1 - rho) E[x* z]_0 / s_0 + rho E[x* z]_1 / s_1
    m   = rho m_hat E[x* z]_1 / s_1

with s_0 = sqrt(chi_hat), s_1 = sqrt(chi_hat + m_hat^2). On the successful
branch chi -> 0 and Q_hat = m_hat -> infinity while chi_hat stays finite
(L1, L2); that branch is stored in rescaled form with chi = 0 and infinite
conjugates.
"""

import math
from dataclasses import dataclass, asdict
from typing import Dict, Optional

import numpy as np
from loguru import logger

from config import config
from ..errors import ConvergenceFailure, NoSolution
from ..numerics import QuadratureRule, q_function
from .l1 import chi_hat_map, solve_l1_chi_hat
from .norms import PNorm, gaussian_moments, phi_p

logger = logger.bind(name="ReplicaSaddle")


@dataclass(frozen=True)
class RsOrderParams:
    """The six RS order parameters in the zero-temperature scaling"""
    Q: float
    chi: float
    m: float
    Q_hat: float
    chi_hat: float
    m_hat: float

    @classmethod
    def successful(cls, rho: float, chi_hat: float) -> "RsOrderParams":
        """Rescaled successful solution: Q = m = rho, diverging conjugates"""
        return cls(Q=rho, chi=0.0, m=rho, Q_hat=math.inf, chi_hat=chi_hat, m_hat=math.inf)

    @classmethod
    def failure_guess(cls, rho: float) -> "RsOrderParams":
        """Generic finite starting point away from the successful branch"""
        return cls(Q=rho, chi=1.0, m=0.5 * rho, Q_hat=1.0, chi_hat=1.0, m_hat=1.0)

    @property
    def is_successful_branch(self) -> bool:
        return math.isinf(self.Q_hat)

    def as_vector(self) -> np.ndarray:
        return np.array([self.Q, self.chi, self.m, self.Q_hat, self.chi_hat, self.m_hat])

    @classmethod
    def from_vector(cls, values) -> "RsOrderParams":
        return cls(*(float(v) for v in values))

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class PhaseVerdict:
    """AT (replica-symmetry) stability of an extremum"""
    rs_stable: bool
    at_condition_lhs: float
    note: Optional[str] = None


@dataclass(frozen=True)
class SaddleOptions:
    """Fixed-point iteration settings"""
    damping: float = config.DAMPING
    max_iterations: int = config.MAX_ITERATIONS
    tol: float = config.FIXED_POINT_TOL
    residual_tol: float = 1e-10
    chi_floor: float = 1e-7
    branch: str = "auto"  # auto | success | failure


def predicted_mse(params: RsOrderParams, rho: float) -> float:
    """E = Q - 2m + rho"""
    return params.Q - 2.0 * params.m + rho


def _check_problem(alpha: float, rho: float) -> None:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")


def _check_finite(params: RsOrderParams) -> None:
    values = params.as_vector()
    if not np.all(np.isfinite(values)):
        raise ValueError(f"order parameters must be finite: {params}")
    if params.chi <= 0 or params.Q_hat <= 0 or params.chi_hat < 0:
        raise ValueError(f"need chi > 0, Q_hat > 0, chi_hat >= 0: {params}")


def _widths(params: RsOrderParams):
    return math.sqrt(params.chi_hat), math.sqrt(params.chi_hat + params.m_hat ** 2)


def rs_free_energy(p: PNorm, alpha: float, rho: float, params: RsOrderParams,
                   quadrature: Optional[QuadratureRule] = None) -> float:
    """
    Evaluate the RS objective at the given order parameters (no extremisation).

    The two Gaussian averages of phi_p are taken in closed form unless a
    quadrature rule is supplied.
    """
    _check_problem(alpha, rho)
    _check_finite(params)
    s0, s1 = _widths(params)

    if quadrature is None:
        avg0 = gaussian_moments(p, s0, params.Q_hat).phi
        avg1 = gaussian_moments(p, s1, params.Q_hat).phi
    else:
        avg0 = quadrature.expectation(lambda z: phi_p(p, s0 * z, params.Q_hat))
        avg1 = quadrature.expectation(lambda z: phi_p(p, s1 * z, params.Q_hat))

    mse = params.Q - 2.0 * params.m + rho
    return (
        alpha * mse / (2.0 * params.chi)
        + params.m_hat * params.m
        - 0.5 * params.Q_hat * params.Q
        + 0.5 * params.chi_hat * params.chi
        + (1.0 - rho) * avg0
        + rho * avg1
    )


def saddle_residuals(p: PNorm, alpha: float, rho: float, params: RsOrderParams) -> np.ndarray:
    """Analytic gradient of rs_free_energy in the order (Q, chi, m, Q_hat, chi_hat, m_hat)"""
    _check_problem(alpha, rho)
    _check_finite(params)
    s0, s1 = _widths(params)
    inner = gaussian_moments(p, s0, params.Q_hat)
    outer = gaussian_moments(p, s1, params.Q_hat)
    mse = params.Q - 2.0 * params.m + rho

    return np.array([
        0.5 * alpha / params.chi - 0.5 * params.Q_hat,
        -0.5 * alpha * mse / params.chi ** 2 + 0.5 * params.chi_hat,
        -alpha / params.chi + params.m_hat,
        -0.5 * params.Q + 0.5 * ((1.0 - rho) * inner.x_sq + rho * outer.x_sq),
        0.5 * params.chi - 0.5 * ((1.0 - rho) * inner.x_z + rho * outer.x_z),
        params.m - rho * params.m_hat * outer.x_z,
    ])


def _conjugates(alpha: float, rho: float, Q: float, chi: float, m: float) -> RsOrderParams:
    mse = max(Q - 2.0 * m + rho, 0.0)
    q_hat = alpha / chi
    return RsOrderParams(Q=Q, chi=chi, m=m, Q_hat=q_hat, chi_hat=alpha * mse / chi ** 2, m_hat=q_hat)


def _update(p: PNorm, rho: float, params: RsOrderParams) -> np.ndarray:
    s0, s1 = _widths(params)
    inner = gaussian_moments(p, s0, params.Q_hat)
    outer = gaussian_moments(p, s1, params.Q_hat)
    return np.array([
        (1.0 - rho) * inner.x_sq + rho * outer.x_sq,
        (1.0 - rho) * inner.x_z + rho * outer.x_z,
        rho * params.m_hat * outer.x_z,
    ])


def _success_chi_hat(p: PNorm, alpha: float, rho: float, options: SaddleOptions) -> float:
    """Limiting chi_hat equation of the successful branch, iterated with damping"""
    if p is PNorm.L0:
        # the dead-zone error decays slower than chi^2, so chi_hat diverges
        return math.inf

    if p is PNorm.L2:
        def limit_map(x: float) -> float:
            return (x + 4.0 * rho) / alpha
    else:
        def limit_map(x: float) -> float:
            return chi_hat_map(x, alpha, rho)

    upper = config.CHI_HAT_BRACKET[1]
    chi_hat = 0.0
    for iteration in range(1, options.max_iterations + 1):
        proposal = (1.0 - options.damping) * chi_hat + options.damping * limit_map(chi_hat)
        step = abs(proposal - chi_hat)
        chi_hat = proposal
        if not math.isfinite(chi_hat) or chi_hat > upper:
            raise NoSolution(f"successful branch does not exist for {p.name} at alpha={alpha}, rho={rho}")
        if step <= options.tol * max(1.0, chi_hat):
            logger.debug(f"success-branch chi_hat={chi_hat:.12g} after {iteration} iterations")
            return chi_hat

    raise ConvergenceFailure(
        "success-branch chi_hat iteration did not converge",
        {"norm": p.name, "alpha": alpha, "rho": rho, "chi_hat": chi_hat,
         "iterations": options.max_iterations},
    )


def successful_params(p: PNorm, alpha: float, rho: float) -> RsOrderParams:
    """Rescaled successful solution, or NoSolution when the branch does not exist"""
    _check_problem(alpha, rho)
    if p is PNorm.L0:
        if alpha <= rho:
            raise NoSolution(f"L0 successful branch needs alpha > rho, got alpha={alpha}, rho={rho}")
        return RsOrderParams.successful(rho, math.inf)
    if p is PNorm.L2:
        if alpha <= 1.0:
            raise NoSolution(f"L2 successful branch needs alpha > 1, got alpha={alpha}")
        return RsOrderParams.successful(rho, 4.0 * rho / (alpha - 1.0))
    return RsOrderParams.successful(rho, solve_l1_chi_hat(alpha, rho))


def solve_rs_saddle(p: PNorm, alpha: float, rho: float, init: Optional[RsOrderParams] = None,
                    options: Optional[SaddleOptions] = None) -> RsOrderParams:
    """
    Damped fixed-point iteration of the stationarity conditions.

    Starting from init (its Q, chi, m; the conjugates are recomputed), the
    iteration either settles on a finite extremum or drives chi towards zero.
    In the latter case the successful branch has been reached and the result
    is returned in rescaled form, with chi_hat from the limiting equation.
    """
    _check_problem(alpha, rho)
    options = options or SaddleOptions()
    init = init or RsOrderParams.failure_guess(rho)

    if options.branch == "success" or (options.branch == "auto" and init.is_successful_branch):
        return RsOrderParams.successful(rho, _success_chi_hat(p, alpha, rho, options))

    if not all(math.isfinite(v) for v in (init.Q, init.chi, init.m)) or init.chi <= 0:
        raise ValueError(f"finite starting point with chi > 0 required, got {init}")

    state = np.array([init.Q, init.chi, init.m], dtype=float)
    step = math.inf
    for iteration in range(1, options.max_iterations + 1):
        params = _conjugates(alpha, rho, *state)
        proposal = (1.0 - options.damping) * state + options.damping * _update(p, rho, params)
        step = float(np.max(np.abs(proposal - state)))
        state = proposal

        if state[1] < options.chi_floor:
            if options.branch == "failure":
                raise ConvergenceFailure(
                    "iteration collapsed onto the successful branch",
                    {"norm": p.name, "alpha": alpha, "rho": rho, "iterations": iteration},
                )
            logger.debug(f"{p.name} alpha={alpha} rho={rho}: chi below floor after {iteration} iterations")
            return RsOrderParams.successful(rho, _success_chi_hat(p, alpha, rho, options))

        if step <= options.tol:
            params = _conjugates(alpha, rho, *state)
            residual = saddle_residuals(p, alpha, rho, params)
            if np.max(np.abs(residual)) <= options.residual_tol:
                logger.debug(f"{p.name} alpha={alpha} rho={rho}: finite extremum after {iteration} iterations")
                return params

    params = _conjugates(alpha, rho, *state)
    raise ConvergenceFailure(
        "RS saddle iteration did not converge",
        {"norm": p.name, "alpha": alpha, "rho": rho, "iterations": options.max_iterations,
         "last_step": step, "residual": saddle_residuals(p, alpha, rho, params).tolist()},
    )


def at_stability(p: PNorm, alpha: float, rho: float, params: RsOrderParams) -> PhaseVerdict:
    """
    Left side of the de Almeida-Thouless condition,
    (alpha / chi^2) [(1 - rho) E[(dx*/dh)^2]_0 + rho E[(dx*/dh)^2]_1].
    """
    _check_problem(alpha, rho)
    if any(math.isnan(v) for v in params.as_vector()):
        raise ValueError(f"order parameters contain NaN: {params}")

    if p is PNorm.L0:
        return PhaseVerdict(
            rs_stable=False,
            at_condition_lhs=math.inf,
            note="hard threshold is discontinuous; (dx*/dh)^2 carries a divergent delta term",
        )

    if params.is_successful_branch:
        # chi * Q_hat = alpha along the branch, so alpha / (chi Q_hat)^2 = 1 / alpha
        if p is PNorm.L2:
            return PhaseVerdict(rs_stable=1.0 / alpha <= 1.0, at_condition_lhs=1.0 / alpha)
        if not math.isfinite(params.chi_hat) or params.chi_hat < 0:
            raise ValueError(f"successful-branch chi_hat must be finite and non-negative: {params}")
        active = 2.0 * q_function(1.0 / math.sqrt(params.chi_hat)) if params.chi_hat > 0 else 0.0
        lhs = ((1.0 - rho) * active + rho) / alpha
        return PhaseVerdict(rs_stable=lhs <= 1.0, at_condition_lhs=lhs)

    _check_finite(params)
    s0, s1 = _widths(params)
    inner = gaussian_moments(p, s0, params.Q_hat)
    outer = gaussian_moments(p, s1, params.Q_hat)
    lhs = alpha / params.chi ** 2 * ((1.0 - rho) * inner.dx_sq + rho * outer.dx_sq)
    return PhaseVerdict(rs_stable=lhs <= 1.0, at_condition_lhs=lhs)
