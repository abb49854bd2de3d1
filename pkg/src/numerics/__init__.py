"""
Numerical kernels shared by the theory, sampling and experiment layers.
"""

from .gaussian import (
    QuadratureRule,
    gaussian_pdf,
    gaussian_quadrature,
    q_function,
    q_function_inverse,
)
from .roots import find_root
from .fitting import fit_polynomial

__all__ = [
    "QuadratureRule",
    "gaussian_pdf",
    "gaussian_quadrature",
    "q_function",
    "q_function_inverse",
    "find_root",
    "fit_polynomial",
]
