"""
Gaussian-family kernels: the tail function, its inverse, the density and
Gauss-Hermite quadrature against Dz = exp(-z^2/2) dz / sqrt(2 pi).
"""

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy import special

ArrayLike = Union[float, np.ndarray]

_SQRT2 = np.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def _scalar_or_array(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def q_function(x: ArrayLike) -> ArrayLike:
    """Upper Gaussian tail Q(x) = int_x^inf Dt, through erfc"""
    return _scalar_or_array(0.5 * special.erfc(np.asarray(x, dtype=float) / _SQRT2))


def q_function_inverse(q: ArrayLike) -> ArrayLike:
    """The x with Q(x) = q, for q in (0, 1)"""
    q = np.asarray(q, dtype=float)
    if np.any((q <= 0.0) | (q >= 1.0)):
        raise ValueError("q must lie strictly inside (0, 1)")
    return _scalar_or_array(-special.ndtri(q))


def gaussian_pdf(x: ArrayLike) -> ArrayLike:
    """Standard normal density"""
    x = np.asarray(x, dtype=float)
    return _scalar_or_array(_INV_SQRT_2PI * np.exp(-0.5 * x * x))


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights such that sum(w * f(z)) approximates int f(z) Dz"""
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def expectation(self, integrand: Callable[[np.ndarray], np.ndarray]) -> float:
        """Integrate a vectorised integrand against the Gaussian measure"""
        return float(np.dot(self.weights, integrand(self.nodes)))


def gaussian_quadrature(order: int) -> QuadratureRule:
    """
    Gauss-Hermite rule rescaled to the standard-normal measure.

    hermgauss integrates against exp(-x^2); with z = sqrt(2) x the weights
    pick up a factor 1/sqrt(pi) and sum to one. The rule is exact for
    polynomials up to degree 2*order - 1.
    """
    if int(order) != order or order < 2:
        raise ValueError(f"quadrature order must be an integer >= 2, got {order}")
    x, w = hermgauss(int(order))
    nodes = _SQRT2 * x
    weights = w / np.sqrt(np.pi)
    return QuadratureRule(nodes=nodes, weights=weights, order=int(order))
