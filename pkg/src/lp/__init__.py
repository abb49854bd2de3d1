"""
L1 reconstruction: the simplex solver, its brute-force oracle and the
success predicate.
"""

from .oracle import brute_force_l1_min
from .simplex import LpOptions, LpSolution, LpStatus, RevisedSimplex, basis_pursuit
from .success import reconstruction_error, reconstruction_success

__all__ = [
    "LpOptions",
    "LpSolution",
    "LpStatus",
    "RevisedSimplex",
    "basis_pursuit",
    "brute_force_l1_min",
    "reconstruction_error",
    "reconstruction_success",
]
