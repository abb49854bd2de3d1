"""
Polynomial least squares used for finite-size extrapolation.
"""

from typing import Sequence

import numpy as np

from ..errors import RankDeficient


def fit_polynomial(xs: Sequence[float], ys: Sequence[float], degree: int) -> np.ndarray:
    """
    Least-squares coefficients c_0..c_degree of sum_k c_k x^k.

    With x = 1/N, c_0 is the N -> infinity extrapolation.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-D sequences of equal length")
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")
    if len(xs) < degree + 1:
        raise ValueError(f"need at least {degree + 1} points for degree {degree}, got {len(xs)}")

    vandermonde = np.vander(xs, degree + 1, increasing=True)
    coefficients, _, rank, singular = np.linalg.lstsq(vandermonde, ys, rcond=None)
    if rank < degree + 1:
        raise RankDeficient(
            f"design matrix has rank {rank} < {degree + 1} "
            f"(smallest singular value {singular[-1]:.3g})"
        )
    return coefficients
