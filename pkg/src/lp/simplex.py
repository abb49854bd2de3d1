"""
Basis pursuit, min ||x||_1 s.t. F x = y, as the linear program

    min 1'(u + v)   s.t.   F (u - v) = y,   u, v >= 0

solved by a dense two-phase revised simplex method with an explicit basis
inverse. Pricing takes the most negative reduced cost; after a run of
degenerate pivots it switches to Bland's rule, which cannot cycle.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from loguru import logger

from config import config

logger = logger.bind(name="Simplex")


class LpStatus(Enum):
    """Outcome of a basis-pursuit solve"""
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    ITERATION_LIMIT = "iteration_limit"
    DEGENERATE = "degenerate"


@dataclass
class LpSolution:
    """Reconstruction and solver diagnostics"""
    x_hat: np.ndarray
    objective: float
    status: LpStatus
    iterations: int
    residual: float
    dual: Optional[np.ndarray] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass(frozen=True)
class LpOptions:
    """Tolerances and limits; None limits scale with the problem size"""
    optimality_tol: float = config.OPTIMALITY_TOL
    feasibility_tol: float = config.FEASIBILITY_TOL
    pivot_tol: float = config.PIVOT_TOL
    max_pivots: Optional[int] = None
    degenerate_trip: int = 20
    degenerate_budget: Optional[int] = None
    refactor_every: int = 50


class _PhaseOutcome(Enum):
    OPTIMAL = "optimal"
    ITERATION_LIMIT = "iteration_limit"
    DEGENERATE = "degenerate"


class RevisedSimplex:
    """Working memory of one solve; not shared between solves"""

    def __init__(self, F: np.ndarray, y: np.ndarray, options: LpOptions):
        self.F = F
        self.y = y
        self.options = options
        self.P, self.N = F.shape

        # rows flipped so that b >= 0 and the artificial start is feasible
        self.row_sign = np.where(y < 0, -1.0, 1.0)
        structural = self.row_sign[:, None] * np.hstack([F, -F])
        self.n_structural = 2 * self.N
        self.A = np.hstack([structural, np.eye(self.P)])
        self.b = np.abs(y).astype(float)

        self.basis = np.arange(self.n_structural, self.n_structural + self.P)
        self.B_inv = np.eye(self.P)
        self.x_B = self.b.copy()
        self.pivots = 0
        self.max_pivots = options.max_pivots or 50 * (self.N + self.P)
        self.degenerate_budget = options.degenerate_budget or 10 * (self.N + self.P)

    def _refactor(self) -> None:
        if self.P == 0:
            return
        basis_matrix = self.A[:, self.basis]
        self.B_inv = np.linalg.solve(basis_matrix, np.eye(self.P))
        self.x_B = np.maximum(self.B_inv @ self.b, 0.0)

    def _pivot(self, row: int, column: int, direction: np.ndarray) -> None:
        theta = self.x_B[row] / direction[row]
        self.x_B -= theta * direction
        self.x_B[row] = theta
        np.maximum(self.x_B, 0.0, out=self.x_B)

        pivot_row = self.B_inv[row] / direction[row]
        self.B_inv -= np.outer(direction, pivot_row)
        self.B_inv[row] = pivot_row
        self.basis[row] = column
        self.pivots += 1
        if self.pivots % self.options.refactor_every == 0:
            self._refactor()

    def _duals(self, costs: np.ndarray) -> np.ndarray:
        return costs[self.basis] @ self.B_inv

    def _run_phase(self, costs: np.ndarray) -> _PhaseOutcome:
        opts = self.options
        enterable = np.zeros(self.A.shape[1], dtype=bool)
        enterable[: self.n_structural] = True
        bland = False
        degenerate_run = 0

        while True:
            reduced = costs - self._duals(costs) @ self.A
            candidates = enterable.copy()
            candidates[self.basis] = False
            candidates &= reduced < -opts.optimality_tol
            if not candidates.any():
                return _PhaseOutcome.OPTIMAL
            if self.pivots >= self.max_pivots:
                return _PhaseOutcome.ITERATION_LIMIT

            if bland:
                column = int(np.flatnonzero(candidates)[0])
            else:
                column = int(np.argmin(np.where(candidates, reduced, np.inf)))

            direction = self.B_inv @ self.A[:, column]
            eligible = np.flatnonzero(direction > opts.pivot_tol)
            if eligible.size == 0:
                # the objective is bounded below by zero, so this is numerical trouble
                logger.warning(f"no pivot row for column {column}; treating solve as degenerate")
                return _PhaseOutcome.DEGENERATE

            ratios = self.x_B[eligible] / direction[eligible]
            best = ratios.min()
            tied = eligible[ratios <= best + 1e-12 * (1.0 + best)]
            if bland:
                row = int(tied[np.argmin(self.basis[tied])])
            else:
                row = int(tied[np.argmax(direction[tied])])

            if best <= 1e-12:
                degenerate_run += 1
                if not bland and degenerate_run > opts.degenerate_trip:
                    logger.debug(f"{degenerate_run} degenerate pivots; switching to Bland's rule")
                    bland = True
                    degenerate_run = 0
                elif bland and degenerate_run > self.degenerate_budget:
                    return _PhaseOutcome.DEGENERATE
            else:
                degenerate_run = 0
                bland = False

            self._pivot(row, column, direction)

    def _drive_out_artificials(self) -> None:
        """Pivot zero-valued artificials out of the basis where a structural column can replace them"""
        for row in np.flatnonzero(self.basis >= self.n_structural):
            tableau_row = self.B_inv[row] @ self.A[:, : self.n_structural]
            tableau_row[self.basis[self.basis < self.n_structural]] = 0.0
            column = int(np.argmax(np.abs(tableau_row)))
            if abs(tableau_row[column]) <= 1e-9:
                logger.debug(f"row {row} is redundant; artificial stays basic at zero")
                continue
            self.x_B[row] = 0.0
            self._pivot(row, column, self.B_inv @ self.A[:, column])

    def _result(self, status: LpStatus) -> LpSolution:
        try:
            self._refactor()
        except np.linalg.LinAlgError:
            logger.warning("basis matrix singular at termination")
            status = LpStatus.DEGENERATE
        values = np.zeros(self.A.shape[1])
        values[self.basis] = self.x_B
        x_hat = values[: self.N] - values[self.N: self.n_structural]
        residual = float(np.max(np.abs(self.F @ x_hat - self.y))) if self.P else 0.0

        costs = np.zeros(self.A.shape[1])
        costs[: self.n_structural] = 1.0
        dual = self.row_sign * self._duals(costs)

        if status is LpStatus.OPTIMAL and residual > self.options.feasibility_tol * max(1.0, np.max(np.abs(self.y), initial=0.0)):
            logger.warning(f"optimal basis violates feasibility: residual {residual:.3g}")
            status = LpStatus.INFEASIBLE
        return LpSolution(
            x_hat=x_hat,
            objective=float(np.sum(np.abs(x_hat))),
            status=status,
            iterations=self.pivots,
            residual=residual,
            dual=dual,
        )

    def solve(self) -> LpSolution:
        phase_one = np.zeros(self.A.shape[1])
        phase_one[self.n_structural:] = 1.0
        outcome = self._run_phase(phase_one)
        if outcome is not _PhaseOutcome.OPTIMAL:
            return self._result(LpStatus(outcome.value))

        infeasibility = float(np.sum(self.x_B[self.basis >= self.n_structural]))
        if infeasibility > self.options.feasibility_tol * max(1.0, float(np.max(self.b, initial=0.0))):
            logger.debug(f"phase one stalled at artificial objective {infeasibility:.3g}")
            return self._result(LpStatus.INFEASIBLE)

        self._drive_out_artificials()

        phase_two = np.zeros(self.A.shape[1])
        phase_two[: self.n_structural] = 1.0
        outcome = self._run_phase(phase_two)
        return self._result(LpStatus(outcome.value))


def basis_pursuit(F: np.ndarray, y: np.ndarray, options: Optional[LpOptions] = None) -> LpSolution:
    """Minimum-L1 solution of F x = y"""
    F = np.asarray(F, dtype=float)
    y = np.asarray(y, dtype=float)
    if F.ndim != 2 or y.shape != (F.shape[0],):
        raise ValueError(f"shape mismatch: F {F.shape}, y {y.shape}")
    if F.shape[0] > F.shape[1]:
        raise ValueError(f"need P <= N, got F of shape {F.shape}")
    return RevisedSimplex(F, y, options or LpOptions()).solve()
