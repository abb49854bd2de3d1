"""
Exhaustive minimum-L1 search over basic solutions, used to cross-check the
simplex solver on tiny instances.
"""

from itertools import combinations

import numpy as np
from loguru import logger

from .simplex import LpSolution, LpStatus

logger = logger.bind(name="Oracle")

MAX_ORACLE_N = 14
CONSISTENCY_TOL = 1e-10


def brute_force_l1_min(F: np.ndarray, y: np.ndarray) -> LpSolution:
    """
    Try every column subset S with |S| <= P and full column rank; keep the
    consistent ones (least-squares residual <= 1e-10) and return the one with
    the smallest L1 norm. Ties go to the first subset in enumeration order.
    """
    F = np.asarray(F, dtype=float)
    y = np.asarray(y, dtype=float)
    P, N = F.shape
    if y.shape != (P,):
        raise ValueError(f"shape mismatch: F {F.shape}, y {y.shape}")
    if N > MAX_ORACLE_N:
        raise ValueError(f"brute force needs N <= {MAX_ORACLE_N}, got {N}")
    if P > N:
        raise ValueError(f"need P <= N, got F of shape {F.shape}")

    best = None
    best_objective = np.inf
    examined = 0
    if np.max(np.abs(y), initial=0.0) <= CONSISTENCY_TOL:
        best, best_objective = np.zeros(N), 0.0

    for size in range(1, P + 1):
        for subset in combinations(range(N), size):
            examined += 1
            columns = F[:, subset]
            if np.linalg.matrix_rank(columns) < size:
                continue
            coefficients, *_ = np.linalg.lstsq(columns, y, rcond=None)
            if np.max(np.abs(columns @ coefficients - y)) > CONSISTENCY_TOL:
                continue
            objective = float(np.sum(np.abs(coefficients)))
            if objective < best_objective - 1e-12:
                best = np.zeros(N)
                best[list(subset)] = coefficients
                best_objective = objective

    logger.debug(f"brute force examined {examined} subsets of {N} columns")
    if best is None:
        return LpSolution(x_hat=np.zeros(N), objective=0.0, status=LpStatus.INFEASIBLE,
                          iterations=examined, residual=float(np.max(np.abs(y))))
    residual = float(np.max(np.abs(F @ best - y), initial=0.0))
    return LpSolution(x_hat=best, objective=float(np.sum(np.abs(best))), status=LpStatus.OPTIMAL,
                      iterations=examined, residual=residual)
