"""
The sparse signal prior P(x) = (1 - rho) delta(x) + rho r(x), with r(x) of
unit second moment.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class NonzeroLaw(Enum):
    """Distribution r(x) of the non-zero entries"""
    STANDARD_GAUSSIAN = "standard_gaussian"
    PLUS_MINUS_ONE = "plus_minus_one"

    @property
    def mean_abs(self) -> float:
        """E|x| under r(x)"""
        if self is NonzeroLaw.STANDARD_GAUSSIAN:
            return math.sqrt(2.0 / math.pi)
        return 1.0

    @classmethod
    def parse(cls, name: str) -> "NonzeroLaw":
        aliases = {"gauss": cls.STANDARD_GAUSSIAN, "pm1": cls.PLUS_MINUS_ONE}
        key = name.strip().lower()
        return aliases[key] if key in aliases else cls(key)

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        if self is NonzeroLaw.STANDARD_GAUSSIAN:
            return rng.standard_normal(size)
        return 2.0 * rng.integers(0, 2, size=size) - 1.0


class SupportMode(Enum):
    """How the support is drawn"""
    BERNOULLI = "bernoulli"
    FIXED_COUNT = "fixed_count"

    @classmethod
    def parse(cls, name: str) -> "SupportMode":
        key = name.strip().lower()
        return cls.FIXED_COUNT if key == "fixed" else cls(key)


@dataclass(frozen=True)
class SignalPrior:
    """Density rho of non-zeros, their law, and how the support is placed"""
    rho: float
    nonzero_law: NonzeroLaw = NonzeroLaw.STANDARD_GAUSSIAN
    support_mode: SupportMode = SupportMode.BERNOULLI

    def __post_init__(self):
        if not 0 < self.rho <= 1:
            raise ValueError(f"rho must lie in (0, 1], got {self.rho}")

    def support_size(self, n: int) -> int:
        """round(rho n), halves rounded up"""
        return int(math.floor(self.rho * n + 0.5))


def sample_signal(n: int, prior: SignalPrior, rng: np.random.Generator) -> np.ndarray:
    """Length-n draw from the prior"""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 < prior.rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {prior.rho}")

    if prior.support_mode is SupportMode.BERNOULLI:
        mask = rng.random(n) < prior.rho
        values = prior.nonzero_law.sample(n, rng)
        return np.where(mask, values, 0.0)

    x = np.zeros(n)
    k = prior.support_size(n)
    if k:
        support = rng.choice(n, size=k, replace=False)
        x[support] = prior.nonzero_law.sample(k, rng)
    return x
