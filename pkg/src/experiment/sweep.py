"""
Sweep configuration: the dataclass, its `key = value` file format and the
P-grid each N is swept over.

Recognised keys:

    rho, n_values, trials_per_point, ensemble, nonzero_law, support_mode,
    master_seed, success_tol, workers, p_values, alpha_grid, alpha_window

List values are comma separated; `a,b,...,z` expands an arithmetic
progression. Without p_values or alpha_grid every N is swept over the
alpha-window around the replica threshold.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from loguru import logger

from config import config
from ..ensembles import MatrixEnsemble, NonzeroLaw, SignalPrior, SupportMode
from ..errors import ConfigError, LpThresholdError
from ..replica import PNorm, critical_alpha

logger = logger.bind(name="SweepConfig")

MIN_TRIALS_FOR_CROSSING = 100


def parse_progression(text: str, cast: Callable[[str], Any] = int) -> List[Any]:
    """
    Parse "10,12,...,30" style lists. Items before `...` fix the start and
    step, the single item after it the inclusive end.
    """
    tokens = [token.strip() for token in text.split(",") if token.strip()]
    if not tokens:
        raise ValueError("empty list")
    if "..." not in tokens:
        return [cast(token) for token in tokens]

    at = tokens.index("...")
    head, tail = tokens[:at], tokens[at + 1:]
    if len(head) < 2 or len(tail) != 1 or "..." in tail:
        raise ValueError(f"'...' needs two leading items and one end item: {text!r}")
    values = [cast(token) for token in head]
    step = values[-1] - values[-2]
    end = cast(tail[0])
    if step == 0 or (end - values[-1]) * step < 0:
        raise ValueError(f"progression never reaches {end}: {text!r}")
    if any(not math.isclose(b - a, step, rel_tol=1e-9, abs_tol=1e-12) for a, b in zip(values, values[1:])):
        raise ValueError(f"leading items are not evenly spaced: {text!r}")

    count = round((end - values[-1]) / step)
    if not math.isclose(values[-1] + count * step, end, rel_tol=1e-9, abs_tol=1e-12):
        raise ValueError(f"{end} is not on the progression: {text!r}")
    values += [values[-1] + k * step for k in range(1, count + 1)]
    if cast is float:
        values[-1] = end
    return values


def alpha_window(rho: float, n: int, half_width: float = config.ALPHA_WINDOW) -> List[int]:
    """Every integer P with P/N inside [alpha_c - w, min(1, alpha_c + w)]"""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if half_width < 0:
        raise ValueError(f"half_width must be non-negative, got {half_width}")
    centre = critical_alpha(PNorm.L1, rho)
    lo = max(1, math.ceil((centre - half_width) * n - 1e-9))
    hi = min(n, math.floor(min(1.0, centre + half_width) * n + 1e-9))
    if hi < lo:
        # window narrower than one grid step; take the nearest P
        nearest = min(n, max(1, round(centre * n)))
        return [nearest]
    return list(range(lo, hi + 1))


@dataclass
class SweepConfig:
    """Everything that determines a Monte Carlo sweep's records"""
    rho: float
    n_values: List[int]
    trials_per_point: int = config.TRIALS_PER_POINT
    ensemble: MatrixEnsemble = MatrixEnsemble.IID_GAUSSIAN
    prior: Optional[SignalPrior] = None
    master_seed: int = 0
    success_tol: float = config.SUCCESS_TOL
    workers: int = config.DEFAULT_WORKERS
    p_values: Optional[List[int]] = None
    alpha_grid: Optional[List[float]] = None
    alpha_window: float = config.ALPHA_WINDOW
    p_range: Dict[int, List[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.rho < 1:
            raise ConfigError(f"rho must lie in (0, 1), got {self.rho}")
        if self.prior is None:
            self.prior = SignalPrior(rho=self.rho)
        self.validate()
        if not self.p_range:
            self.p_range = {n: self._grid_for(n) for n in self.n_values}

    def validate(self) -> None:
        if not 0 < self.rho < 1:
            raise ConfigError(f"rho must lie in (0, 1), got {self.rho}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ConfigError(f"n_values must be positive integers, got {self.n_values}")
        if len(set(self.n_values)) != len(self.n_values):
            raise ConfigError(f"n_values contains duplicates: {self.n_values}")
        if self.trials_per_point < MIN_TRIALS_FOR_CROSSING:
            raise ConfigError(
                f"trials_per_point must be at least {MIN_TRIALS_FOR_CROSSING}, got {self.trials_per_point}"
            )
        if self.success_tol <= 0:
            raise ConfigError(f"success_tol must be positive, got {self.success_tol}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ConfigError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if abs(self.prior.rho - self.rho) > 1e-15:
            raise ConfigError(f"prior density {self.prior.rho} differs from rho {self.rho}")
        if self.p_values is not None and self.alpha_grid is not None:
            raise ConfigError("give p_values or alpha_grid, not both")
        for n, rows in self.p_range.items():
            bad = [p for p in rows if not 1 <= p <= n]
            if bad:
                raise ConfigError(f"row counts {bad} outside [1, {n}]")

    def _grid_for(self, n: int) -> List[int]:
        if self.p_values is not None:
            rows = sorted({p for p in self.p_values if 1 <= p <= n})
        elif self.alpha_grid is not None:
            rows = sorted({min(n, max(1, round(alpha * n))) for alpha in self.alpha_grid})
        else:
            try:
                rows = alpha_window(self.rho, n, self.alpha_window)
            except LpThresholdError as exc:
                raise ConfigError(f"cannot place an alpha-window at rho={self.rho}: {exc}") from exc
        if not rows:
            raise ConfigError(f"no row counts to sweep at n={n}")
        return rows

    @property
    def total_trials(self) -> int:
        return sum(len(rows) for rows in self.p_range.values()) * self.trials_per_point

    @property
    def as_dict(self) -> Dict[str, Any]:
        return {
            "rho": self.rho,
            "n_values": list(self.n_values),
            "trials_per_point": self.trials_per_point,
            "ensemble": self.ensemble.value,
            "nonzero_law": self.prior.nonzero_law.value,
            "support_mode": self.prior.support_mode.value,
            "master_seed": self.master_seed,
            "success_tol": self.success_tol,
            "workers": self.workers,
            "p_range": {n: list(rows) for n, rows in self.p_range.items()},
        }


def _parse_int(value: str) -> int:
    return int(value, 0)


_SCALARS: Dict[str, Callable[[str], Any]] = {
    "rho": float,
    "trials_per_point": int,
    "master_seed": _parse_int,
    "success_tol": float,
    "workers": int,
    "alpha_window": float,
}


def sweep_config_from_mapping(values: Dict[str, str]) -> SweepConfig:
    """Build a SweepConfig from raw string values"""
    unknown = set(values) - set(_SCALARS) - {
        "n_values", "p_values", "alpha_grid", "ensemble", "nonzero_law", "support_mode"
    }
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(sorted(unknown))}")
    for required in ("rho", "n_values"):
        if required not in values:
            raise ConfigError(f"missing required key '{required}'")

    kwargs: Dict[str, Any] = {}
    try:
        for key, cast in _SCALARS.items():
            if key in values:
                kwargs[key] = cast(values[key])
        kwargs["n_values"] = parse_progression(values["n_values"], int)
        if "p_values" in values:
            kwargs["p_values"] = parse_progression(values["p_values"], int)
        if "alpha_grid" in values:
            kwargs["alpha_grid"] = parse_progression(values["alpha_grid"], float)
        if "ensemble" in values:
            kwargs["ensemble"] = MatrixEnsemble.parse(values["ensemble"])
        kwargs["prior"] = SignalPrior(
            rho=kwargs["rho"],
            nonzero_law=NonzeroLaw.parse(values.get("nonzero_law", NonzeroLaw.STANDARD_GAUSSIAN.value)),
            support_mode=SupportMode.parse(values.get("support_mode", SupportMode.BERNOULLI.value)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid value: {exc}") from exc
    return SweepConfig(**kwargs)


def load_sweep_config(path: Union[str, Path]) -> SweepConfig:
    """Read a flat `key = value` sweep file; `#` starts a comment"""
    values: Dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read sweep config {path}: {exc}") from exc

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ConfigError(f"line {number}: duplicate key '{key}'")
        values[key] = value

    sweep = sweep_config_from_mapping(values)
    logger.info(f"Loaded sweep config from {path}: {sweep.total_trials} trials over N={sweep.n_values}")
    return sweep
