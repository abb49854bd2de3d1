"""
Monte Carlo reconstruction trials.

A trial is keyed by (n, p_rows, trial_index); its seed is derived from that
key and the master seed alone, so the record list is the same for any
worker count. Results are yielded in key order.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, List, Optional, Set, Tuple

import numpy as np
from loguru import logger
from tqdm import tqdm

from ..ensembles import MatrixEnsemble, SignalPrior, derive_trial_seed, make_instance
from ..lp import basis_pursuit, reconstruction_error
from .sweep import SweepConfig

logger = logger.bind(name="Trials")

TrialKey = Tuple[int, int, int]

# status recorded when the solve raised instead of returning
ERROR_STATUS = "error"


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one reconstruction trial"""
    n: int
    p_rows: int
    trial_index: int
    seed: int
    success: bool
    objective: float
    residual: float
    status: str

    @property
    def key(self) -> TrialKey:
        return self.n, self.p_rows, self.trial_index


@dataclass(frozen=True)
class _TrialTask:
    key: TrialKey
    seed: int
    ensemble: MatrixEnsemble
    prior: SignalPrior
    success_tol: float


def _run_task(task: _TrialTask) -> TrialRecord:
    n, p_rows, trial_index = task.key
    try:
        instance = make_instance(task.ensemble, n, p_rows, task.prior, task.seed)
        solution = basis_pursuit(instance.F, instance.y)
    except (np.linalg.LinAlgError, FloatingPointError, ValueError) as exc:
        logger.warning(f"trial {task.key} seed={task.seed} raised {exc!r}")
        return TrialRecord(n=n, p_rows=p_rows, trial_index=trial_index, seed=task.seed, success=False,
                           objective=math.nan, residual=math.nan, status=ERROR_STATUS)

    success = solution.is_optimal and reconstruction_error(solution.x_hat, instance.x0) <= task.success_tol
    if not solution.is_optimal:
        logger.warning(f"trial {task.key} seed={task.seed} ended {solution.status.value}")
    return TrialRecord(
        n=n,
        p_rows=p_rows,
        trial_index=trial_index,
        seed=task.seed,
        success=bool(success),
        objective=solution.objective,
        residual=solution.residual,
        status=solution.status.value,
    )


def trial_keys(sweep: SweepConfig) -> List[TrialKey]:
    """All trial keys of a sweep in canonical order"""
    return [
        (n, p_rows, trial_index)
        for n in sweep.n_values
        for p_rows in sweep.p_range[n]
        for trial_index in range(sweep.trials_per_point)
    ]


def _tasks(sweep: SweepConfig, keys: Iterable[TrialKey]) -> Iterator[_TrialTask]:
    for key in keys:
        yield _TrialTask(
            key=key,
            seed=derive_trial_seed(sweep.master_seed, *key),
            ensemble=sweep.ensemble,
            prior=sweep.prior,
            success_tol=sweep.success_tol,
        )


def iter_trials(sweep: SweepConfig, skip: Optional[Set[TrialKey]] = None,
                workers: Optional[int] = None, progress: bool = True) -> Iterator[TrialRecord]:
    """Run the sweep's trials lazily, yielding records in key order"""
    keys = [key for key in trial_keys(sweep) if not skip or key not in skip]
    workers = workers or sweep.workers
    if skip:
        logger.info(f"Resuming sweep: {len(skip)} trials already recorded, {len(keys)} to run")
    logger.info(f"Running {len(keys)} trials on {workers} worker(s)")

    bar = tqdm(total=len(keys), desc="trials", unit="trial", disable=None if progress else True)
    try:
        if workers == 1:
            for task in _tasks(sweep, keys):
                yield _run_task(task)
                bar.update()
            return
        chunksize = max(1, min(64, len(keys) // (workers * 8) or 1))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for record in executor.map(_run_task, _tasks(sweep, keys), chunksize=chunksize):
                yield record
                bar.update()
    finally:
        bar.close()


def run_trials(sweep: SweepConfig, skip: Optional[Set[TrialKey]] = None,
               sink: Optional[Callable[[TrialRecord], None]] = None,
               workers: Optional[int] = None, progress: bool = True) -> List[TrialRecord]:
    """
    Run every trial of a sweep not listed in `skip`.

    Records are handed to `sink` (if given) one by one in key order, so a
    file sink always holds a prefix of the full sweep.
    """
    records: List[TrialRecord] = []
    for record in iter_trials(sweep, skip=skip, workers=workers, progress=progress):
        if sink is not None:
            sink(record)
        records.append(record)

    failures = sum(1 for record in records if record.status == ERROR_STATUS)
    if failures:
        logger.warning(f"{failures} of {len(records)} trials raised during the solve")
    logger.info(f"Finished {len(records)} trials, {sum(r.success for r in records)} successes")
    return records
