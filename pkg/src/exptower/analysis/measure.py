"""Weighted interval measures m(I) = integral of dt / phi(t) over I."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from ..evaluator import Interval
from ..xreal import MINUS, PLUS, check_base


@dataclass(frozen=True)
class QuadPhi:
    """phi(t) = 1 + lam t^2."""

    lam: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError("lam must be positive and finite")

    def phi(self, t: float) -> float:
        return 1 + self.lam * t * t

    def antiderivative(self, t: float) -> float:
        r = math.sqrt(self.lam)
        return math.copysign(math.atan(r * abs(t)) / r, t)


@dataclass(frozen=True)
class PowPhi:
    """phi(t) = max(1, |a t|^nu): flat on [-1/a, 1/a], power law outside."""

    a: float
    nu: float

    def __post_init__(self):
        check_base(self.a)
        if not self.nu > 1:
            raise ValueError("nu must exceed 1")

    def phi(self, t: float) -> float:
        return max(1.0, abs(self.a * t) ** self.nu)

    def antiderivative(self, t: float) -> float:
        s = abs(t)
        knee = 1 / self.a
        if s <= knee:
            g = s
        else:
            g = knee + (1 - (self.a * s) ** (1 - self.nu)) / (self.a * (self.nu - 1))
        return math.copysign(g, t)


Phi = Union[QuadPhi, PowPhi]


def phi_measure(family: Phi, interval: Interval) -> float:
    """Closed-form measure; the antiderivatives are odd, so m(-I) == m(I) exactly."""
    if interval.lo == interval.hi:
        return 0.0
    return family.antiderivative(interval.hi) - family.antiderivative(interval.lo)


@dataclass(frozen=True)
class ContractionCheck:
    m_before: float
    m_after_plus: float
    m_after_minus: float
    contracted: bool


def contraction_check(a: float, family: Phi, interval: Interval) -> ContractionCheck:
    """Measures of I, f_+(I) and f_-(I); strict decrease is required unless I is a point."""
    a = check_base(a)
    before = phi_measure(family, interval)
    plus = phi_measure(family, interval.image(PLUS, a))
    minus = phi_measure(family, interval.image(MINUS, a))
    if interval.lo == interval.hi:
        contracted = True
    else:
        contracted = plus < before and minus < before
    return ContractionCheck(before, plus, minus, contracted)
