"""
Bracketed scalar root finding.
"""

import math
from typing import Callable

from scipy.optimize import brentq

from ..errors import NoBracket, NonFinite


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """
    Root of f inside [lo, hi] by Brent's method.

    Brent keeps the sign-change bracket at every step and falls back to
    bisection whenever the interpolation step is rejected, so convergence is
    guaranteed once the endpoints straddle a sign change.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")

    def guarded(x: float) -> float:
        value = f(x)
        if not math.isfinite(value):
            raise NonFinite(f"f({x!r}) = {value!r} inside [{lo}, {hi}]")
        return value

    f_lo = guarded(lo)
    f_hi = guarded(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise NoBracket(f"f({lo})={f_lo:.6g} and f({hi})={f_hi:.6g} have the same sign")

    return brentq(guarded, lo, hi, xtol=tol, rtol=4 * 2.220446049250313e-16, maxiter=1000)
