"""Fixed points of f_+ (small bases), of f_- (any base) and the two-cycle of f_-."""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from ..errors import NoCycle, OutOfRange
from ..xreal import MINUS, apply_sign, check_base
from .roots import bisect

INV_E = 1 / math.e


@dataclass(frozen=True)
class PlusFixedPoints:
    """The two solutions m <= 1/a <= M of x e^{-ax} = 1."""

    a: float
    m: float
    M: float


@dataclass(frozen=True)
class MinusFixedPoint:
    a: float
    m_minus: float
    repulsive: bool


@dataclass(frozen=True)
class TwoCycle:
    a: float
    p: float
    q: float
    m_minus: float
    iterations: int

    @property
    def residuals(self) -> tuple[float, float]:
        return (abs(apply_sign(MINUS, self.a, self.p) - self.q),
                abs(apply_sign(MINUS, self.a, self.q) - self.p))


def g_plus(a: float, x: float) -> float:
    return x * math.exp(-a * x)


def plus_fixed_points(a: float) -> PlusFixedPoints:
    """Fixed points of f_+, which exist only for a <= 1/e."""
    a = check_base(a)
    if a > INV_E:
        raise OutOfRange(f"base must satisfy a <= 1/e, got {a}")
    peak = 1 / a

    def h(x):
        return g_plus(a, x) - 1.0

    if h(peak) <= 4 * sys.float_info.epsilon:
        # a = 1/e up to rounding: the two roots merge at the peak.
        return PlusFixedPoints(a, peak, peak)
    m = bisect(h, 0.0, peak)
    hi = 2 * peak
    while h(hi) >= 0:
        hi *= 2
    M = bisect(h, peak, hi)
    return PlusFixedPoints(a, m, M)


def float_fixed_point(a: float, m: float, max_iter: int = 200) -> float:
    """A binary64 point near ``m`` that the rounded map x -> exp(a x) leaves
    fixed, or failing that the largest nearby point it does not push down.

    Keeps sets such as ]m, +inf] exactly invariant under the rounded f_+.
    """
    x = m
    for _ in range(max_iter):
        y = math.exp(a * x)
        if y == x:
            return x
        x = y
    x = m
    while math.exp(a * x) < x:
        x = math.nextafter(x, -math.inf)
    return x


def minus_fixed_point(a: float) -> MinusFixedPoint:
    """Unique root of x + e^{ax}, which lies in (-1, 0)."""
    a = check_base(a)
    m = bisect(lambda x: x + math.exp(a * x), -1.0, 0.0)
    # a*m < -1 iff m < -1/a iff h(-1/a) > 0; the sign test avoids the rounding
    # of a*m right at the neutral base a = e.
    repulsive = (-1 / a + math.exp(-1.0)) > 0
    return MinusFixedPoint(a, m, repulsive)


def two_cycle(a: float, tol: float = 1e-12, max_iter: int = 1_000_000) -> TwoCycle:
    """Endpoints of the limit interval of the all-minus word, for a > e.

    Iterates [lo, hi] -> f_-([lo, hi]) = [f_-(hi), f_-(lo)] from the whole
    line until both endpoints move by less than ``tol`` and the exchange
    residuals |f_-(p) - q|, |f_-(q) - p| are below ``tol`` too.
    """
    a = check_base(a)
    if a <= math.e:
        raise NoCycle(f"f_- has no two-cycle for a <= e (got a = {a})")
    fm = minus_fixed_point(a).m_minus
    lo, hi = -math.inf, math.inf
    for it in range(1, max_iter + 1):
        new_lo, new_hi = apply_sign(MINUS, a, hi), apply_sign(MINUS, a, lo)
        moved = abs(new_lo - lo) < tol and abs(new_hi - hi) < tol
        lo, hi = new_lo, new_hi
        if moved and max(TwoCycle(a, lo, hi, fm, it).residuals) < tol:
            break
    else:
        raise NoCycle(f"endpoints did not stabilize within {max_iter} iterations")
    if not lo < fm < hi:
        raise NoCycle(f"interval collapsed onto the fixed point {fm}")
    return TwoCycle(a, lo, hi, fm, it)


__all__ = [
    "PlusFixedPoints", "MinusFixedPoint", "TwoCycle", "plus_fixed_points",
    "minus_fixed_point", "two_cycle", "float_fixed_point", "g_plus",
]
