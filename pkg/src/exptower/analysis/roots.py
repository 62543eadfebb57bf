"""Plain bisection, the correctness path for every scalar root in this package."""

from __future__ import annotations

import math
from typing import Callable

MAX_ITER = 200


def bracket_root(f: Callable[[float], float], lo: float, hi: float,
                 max_iter: int = MAX_ITER) -> tuple[float, float]:
    """Shrink ``[lo, hi]`` around a sign change of ``f``.

    Stops when the bracket cannot be split further in binary64 or after
    ``max_iter`` halvings. An exact zero collapses the bracket to a point.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if math.copysign(1, flo) == math.copysign(1, fhi):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f = {flo}, {fhi}")
    for _ in range(max_iter):
        mid = lo + (hi - lo) / 2
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if math.copysign(1, fm) == math.copysign(1, flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def bisect(f: Callable[[float], float], lo: float, hi: float,
           max_iter: int = MAX_ITER) -> float:
    """Root of ``f`` in ``[lo, hi]``; returns the bracket end with the smaller residual."""
    lo, hi = bracket_root(f, lo, hi, max_iter)
    return lo if abs(f(lo)) <= abs(f(hi)) else hi
