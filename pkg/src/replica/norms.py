"""
Scalar Lp thresholding: the minimisers x_p*(h; Q_hat), the potentials
phi_p(h; Q_hat) and their closed-form averages over h = sigma * z, z ~ N(0, 1).
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from ..numerics import gaussian_pdf, q_function

ArrayLike = Union[float, np.ndarray]


class PNorm(Enum):
    """Reconstruction norm"""
    L0 = 0
    L1 = 1
    L2 = 2

    @property
    def p(self) -> int:
        return self.value

    @classmethod
    def from_p(cls, p: Union[int, str]) -> "PNorm":
        """Accepts 0/1/2 or 'L0'/'L1'/'L2'"""
        if isinstance(p, str):
            key = p.strip().upper()
            if key in cls.__members__:
                return cls[key]
            p = int(key)
        return cls(int(p))


def _check_q_hat(q_hat: float) -> None:
    if not q_hat > 0:
        raise ValueError(f"Q_hat must be positive, got {q_hat}")


def _result(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def hard_threshold(q_hat: float) -> float:
    """h_0 = sqrt(2 Q_hat), the L0 jump location"""
    return math.sqrt(2.0 * q_hat)


def x_star(p: PNorm, h: ArrayLike, q_hat: float) -> ArrayLike:
    """Minimiser of (Q_hat/2) x^2 - h x + |x|^p"""
    _check_q_hat(q_hat)
    h = np.asarray(h, dtype=float)
    if p is PNorm.L0:
        out = np.where(np.abs(h) > hard_threshold(q_hat), h / q_hat, 0.0)
    elif p is PNorm.L1:
        out = np.where(np.abs(h) > 1.0, (h - np.sign(h)) / q_hat, 0.0)
    elif p is PNorm.L2:
        out = h / (q_hat + 2.0)
    else:
        raise ValueError(f"unsupported norm {p!r}")
    return _result(out)


def phi_p(p: PNorm, h: ArrayLike, q_hat: float) -> ArrayLike:
    """Minimum value of (Q_hat/2) x^2 - h x + |x|^p over x"""
    _check_q_hat(q_hat)
    h = np.asarray(h, dtype=float)
    if p is PNorm.L0:
        out = np.minimum(0.0, 1.0 - h * h / (2.0 * q_hat))
    elif p is PNorm.L1:
        excess = np.maximum(np.abs(h) - 1.0, 0.0)
        out = -excess * excess / (2.0 * q_hat)
    elif p is PNorm.L2:
        out = -h * h / (2.0 * (q_hat + 2.0))
    else:
        raise ValueError(f"unsupported norm {p!r}")
    return _result(out)


@dataclass(frozen=True)
class GaussianMoments:
    """
    Averages over z ~ N(0, 1) at h = sigma * z:
      phi       E[phi_p(h)]
      x_sq      E[x*(h)^2]
      x_z       E[x*(h) z] / sigma   (the sigma -> 0 limit when sigma = 0)
      dx_sq     E[(dx*/dh)^2], regular part only; the L0 jump adds a
                divergent delta contribution that is not represented here
    """
    phi: float
    x_sq: float
    x_z: float
    dx_sq: float


def _tail_moments(t: float):
    """P(|z|>t), E[|z|; |z|>t], E[z^2; |z|>t]"""
    if math.isinf(t):
        return 0.0, 0.0, 0.0
    tail = q_function(t)
    density = gaussian_pdf(t)
    return 2.0 * tail, 2.0 * density, 2.0 * (t * density + tail)


def gaussian_moments(p: PNorm, sigma: float, q_hat: float) -> GaussianMoments:
    """Closed-form Gaussian averages of the scalar problem"""
    _check_q_hat(q_hat)
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")

    if p is PNorm.L2:
        shrink = 1.0 / (q_hat + 2.0)
        return GaussianMoments(
            phi=-0.5 * sigma * sigma * shrink,
            x_sq=sigma * sigma * shrink * shrink,
            x_z=shrink,
            dx_sq=shrink * shrink,
        )

    if p is PNorm.L1:
        t = math.inf if sigma == 0 else 1.0 / sigma
        t0, t1, t2 = _tail_moments(t)
        # E[(|h| - 1)^2; |h| > 1]
        excess_sq = sigma * sigma * t2 - 2.0 * sigma * t1 + t0
        return GaussianMoments(
            phi=-excess_sq / (2.0 * q_hat),
            x_sq=excess_sq / (q_hat * q_hat),
            x_z=t0 / q_hat,
            dx_sq=t0 / (q_hat * q_hat),
        )

    if p is PNorm.L0:
        t = math.inf if sigma == 0 else hard_threshold(q_hat) / sigma
        t0, _, t2 = _tail_moments(t)
        return GaussianMoments(
            phi=t0 - sigma * sigma * t2 / (2.0 * q_hat),
            x_sq=sigma * sigma * t2 / (q_hat * q_hat),
            x_z=t2 / q_hat,
            dx_sq=t0 / (q_hat * q_hat),
        )

    raise ValueError(f"unsupported norm {p!r}")
