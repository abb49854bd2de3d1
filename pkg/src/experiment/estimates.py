"""
Empirical critical compression rates: the 50% crossing of the success
probability at each N, its N -> infinity extrapolation, and Monte Carlo
counterparts of the replica MSE and minimized-norm predictions.
"""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..ensembles import MatrixEnsemble, SignalPrior, derive_trial_seed, make_instance
from ..errors import NoBracket
from ..lp import basis_pursuit
from ..numerics import fit_polynomial
from .trials import TrialRecord

logger = logger.bind(name="Estimates")

MIN_EXTRAPOLATION_SIZES = 4


@dataclass
class CriticalPointEstimate:
    """alpha_c(rho, N) from one N, with the (P, successes, trials) table behind it"""
    rho: float
    n: int
    alpha_c_n: float
    stderr: float
    points: List[Tuple[int, int, int]] = field(default_factory=list)
    recorded_trials: Optional[int] = None

    @property
    def trials_total(self) -> int:
        if self.points:
            return sum(trials for _, _, trials in self.points)
        return self.recorded_trials or 0


def success_table(records: Iterable[TrialRecord], n: int) -> List[Tuple[int, int, int]]:
    """(P, successes, trials) for every P recorded at this N, ascending in P"""
    counts: Dict[int, List[int]] = defaultdict(lambda: [0, 0])
    for record in records:
        if record.n != n:
            continue
        counts[record.p_rows][0] += int(record.success)
        counts[record.p_rows][1] += 1
    return [(p_rows, successes, trials) for p_rows, (successes, trials) in sorted(counts.items())]


def estimate_critical_alpha(records: Iterable[TrialRecord], rho: float, n: int) -> CriticalPointEstimate:
    """
    Linear interpolation of the success probability between the first pair
    of adjacent P values that straddles 1/2. The standard error propagates
    the two binomial errors through the interpolation formula.
    """
    table = success_table(records, n)
    if len(table) < 2:
        raise NoBracket(f"need at least two P values at n={n}, got {len(table)}")

    probabilities = [successes / trials for _, successes, trials in table]
    if not (probabilities[0] < 0.5 < probabilities[-1]):
        raise NoBracket(
            f"success probability at n={n} runs from {probabilities[0]:.3f} to {probabilities[-1]:.3f}; "
            "it must start below and end above 1/2"
        )

    for (lower, upper), (p_lo, p_hi) in zip(zip(table, table[1:]), zip(probabilities, probabilities[1:])):
        if p_lo < 0.5 <= p_hi:
            break
    else:  # pragma: no cover - unreachable once the end points bracket 1/2
        raise NoBracket(f"no adjacent pair of P values straddles 1/2 at n={n}")

    rows_lo, _, trials_lo = lower
    rows_hi, _, trials_hi = upper
    span = rows_hi - rows_lo
    gap = p_hi - p_lo
    alpha = (rows_lo + span * (0.5 - p_lo) / gap) / n

    d_lo = span * (0.5 - p_hi) / (gap * gap * n)
    d_hi = -span * (0.5 - p_lo) / (gap * gap * n)
    var_lo = p_lo * (1.0 - p_lo) / trials_lo
    var_hi = p_hi * (1.0 - p_hi) / trials_hi
    stderr = math.sqrt(d_lo * d_lo * var_lo + d_hi * d_hi * var_hi)

    logger.info(f"n={n}: alpha_c = {alpha:.5f} +/- {stderr:.5f} (P {rows_lo}->{rows_hi})")
    return CriticalPointEstimate(rho=rho, n=n, alpha_c_n=alpha, stderr=stderr, points=table)


def finite_size_fit(estimates: Sequence[CriticalPointEstimate]) -> np.ndarray:
    """Coefficients (c0, c1, c2) of alpha_c(N) = c0 + c1/N + c2/N^2"""
    sizes = {estimate.n for estimate in estimates}
    if len(sizes) < MIN_EXTRAPOLATION_SIZES:
        raise ValueError(f"need estimates at {MIN_EXTRAPOLATION_SIZES} or more distinct N, got {sorted(sizes)}")
    xs = [1.0 / estimate.n for estimate in estimates]
    ys = [estimate.alpha_c_n for estimate in estimates]
    return fit_polynomial(xs, ys, 2)


def extrapolate_to_infinite_n(estimates: Sequence[CriticalPointEstimate]) -> float:
    """Quadratic-in-1/N intercept, the N -> infinity critical rate"""
    coefficients = finite_size_fit(estimates)
    logger.info(f"alpha_c(N) = {coefficients[0]:.5f} + {coefficients[1]:.4f}/N + {coefficients[2]:.4f}/N^2")
    return float(coefficients[0])


def estimate_mse(ensemble: MatrixEnsemble, prior: SignalPrior, n: int, p_rows: int, trials: int,
                 seed: int) -> Tuple[float, float]:
    """Mean and standard error of N^-1 |x_hat - x0|^2 over seeded trials"""
    if trials < 2:
        raise ValueError(f"trials must be at least 2, got {trials}")
    errors = []
    for trial_index in range(trials):
        instance = make_instance(ensemble, n, p_rows, prior, derive_trial_seed(seed, n, p_rows, trial_index))
        solution = basis_pursuit(instance.F, instance.y)
        if not solution.is_optimal:
            logger.warning(f"MSE trial {trial_index} ended {solution.status.value}; excluded")
            continue
        errors.append(float(np.mean((solution.x_hat - instance.x0) ** 2)))
    if len(errors) < 2:
        raise ValueError(f"only {len(errors)} of {trials} trials solved to optimality")
    values = np.asarray(errors)
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(len(values)))


def mean_objective(records: Iterable[TrialRecord]) -> float:
    """Mean of objective / N over successful trials"""
    values = [record.objective / record.n for record in records if record.success]
    if not values:
        raise ValueError("no successful trials to average")
    return float(np.mean(values))
