"""Contraction certificates for the two weight families and the constants A, B.

Quadratic family: phi(t) = 1 + lam t^2. The contraction condition becomes
positivity of F(y) = e^{-y} + lam e^y - a - lam y^2 / a on the real line.
Choosing a = (2+t)e^{-t}, lam = (2+t)e^{-2t}/(2-t) makes F touch zero at
y = t, and lam <= a^2 (|t| <= sqrt 3) makes F convex.

Power family: phi(t) = max(1, |a t|^nu) with nu = 1 + 1/a works exactly
when f(a) = (a+1) a^{-1/(a+1)} <= e, i.e. a in [A, B].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..xreal import check_base
from .roots import bisect, bracket_root

SQRT3 = math.sqrt(3.0)
# Equality in lam <= a^2 and F >= 0 is allowed; these absorb binary64 rounding.
CONVEX_RTOL = 1e-12
GRID_ATOL = 1e-12


def f_pow(x: float) -> float:
    """(x+1) x^{-1/(x+1)}; both power-family conditions reduce to f(a) <= e."""
    return (x + 1) * x ** (-1 / (x + 1))


def quad_a(t: float) -> float:
    """The base reached by the quadratic family at parameter t: (2+t)e^{-t}."""
    return (2 + t) * math.exp(-t)


def quad_lambda(t: float) -> float:
    return (2 + t) * math.exp(-2 * t) / (2 - t)


def quad_F(lam: float, a: float, y):
    """F_{lam,a}(y); works on floats and numpy arrays."""
    return np.exp(-y) + lam * np.exp(y) - a - lam * y * y / a


@dataclass(frozen=True)
class Constants:
    A: float
    B: float
    residual_A: float
    residual_B: float
    tol: float

    @property
    def product(self) -> float:
        return self.A * self.B


def constants_AB(tol: float = 1e-12) -> Constants:
    """The two roots of f(x) = e, one in (0, 1) and one in (1, 4]."""

    def h(x):
        return f_pow(x) - math.e

    A = bisect(h, 1e-3, 1.0)
    B = bisect(h, 1.0, 4.0)
    return Constants(A, B, abs(h(A)), abs(h(B)), tol)


@dataclass(frozen=True)
class GridSpec:
    lo: float = -40.0
    hi: float = 40.0
    points: int = 100_000

    def __post_init__(self):
        if not (self.lo <= -1 and self.hi >= 1 and self.points >= 2):
            raise ValueError("grid must cover [-1, 1] with at least two points")


@dataclass(frozen=True)
class CertificateQuad:
    a: float
    t_param: float | None
    lam: float | None
    lam_overridden: bool
    param_residual: float | None
    convex_ok: bool
    grid_min: float | None
    grid_argmin: float | None
    grid_ok: bool
    tails_ok: bool
    verdict: bool


def solve_quad_param(a: float) -> float | None:
    """t in [-sqrt3, sqrt3] with (2+t)e^{-t} = a, or None if a is out of reach.

    (2+t)e^{-t} increases on [-sqrt3, -1] up to e and decreases on [-1, sqrt3];
    the decreasing branch covers the larger range so it is tried first.
    """
    for lo, hi in ((-1.0, SQRT3), (-SQRT3, -1.0)):
        def h(t):
            return quad_a(t) - a
        try:
            lo_t, hi_t = bracket_root(h, lo, hi)
        except ValueError:
            continue
        return lo_t if abs(h(lo_t)) <= abs(h(hi_t)) else hi_t
    return None


def _tails_ok(lam: float, a: float, grid: GridSpec) -> bool:
    # y >= Y: F(y) > lam e^y - a - lam y^2/a, which is positive at Y and has
    # positive derivative once e^y >= 2y/a (e^y / y grows for y >= 1).
    Y = grid.hi
    right = (lam * math.exp(Y) - a - lam * Y * Y / a > 0) and math.exp(Y) >= 2 * Y / a
    # y <= -S, s = -y: F > e^s - a - lam s^2/a, same argument with e^s >= 2 lam s/a.
    S = -grid.lo
    left = (math.exp(S) - a - lam * S * S / a > 0) and math.exp(S) >= 2 * lam * S / a
    return right and left


def certify_quad(a: float, grid: GridSpec = GridSpec(), lam: float | None = None) -> CertificateQuad:
    """Check the quadratic weight at base ``a``.

    ``lam`` overrides the parametrized value (e.g. lam = 1 at a = 1).
    The verdict needs lam <= a^2, F >= 0 on the grid and the analytic tail
    bounds beyond it.
    """
    a = check_base(a)
    t = solve_quad_param(a)
    overridden = lam is not None
    if lam is None and t is not None:
        lam = quad_lambda(t)
    param_residual = abs(quad_a(t) - a) if t is not None else None
    if lam is None:
        return CertificateQuad(a, t, None, False, None, False, None, None, False, False, False)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    convex_ok = lam <= a * a * (1 + CONVEX_RTOL)
    ys = np.linspace(grid.lo, grid.hi, grid.points)
    F = quad_F(lam, a, ys)
    i = int(np.argmin(F))
    grid_min = float(F[i])
    grid_ok = grid_min >= -GRID_ATOL
    tails_ok = _tails_ok(lam, a, grid)
    verdict = convex_ok and grid_ok and tails_ok
    return CertificateQuad(a, t, lam, overridden, param_residual, convex_ok,
                           grid_min, float(ys[i]), grid_ok, tails_ok, verdict)


@dataclass(frozen=True)
class CertificatePow:
    a: float
    nu: float
    nu_prime: float
    cond1_value: float
    cond2_value: float
    cond1: bool
    cond2: bool
    verdict: bool


def certify_pow(a: float) -> CertificatePow:
    """nu = 1 + 1/a: condition 1 is nu a^{1/nu} <= e, condition 2 nu' a^{-1/nu'} <= e."""
    a = check_base(a)
    nu = 1 + 1 / a
    nu_p = 1 + a
    v1 = nu * a ** (1 / nu)
    v2 = nu_p * a ** (-1 / nu_p)
    c1, c2 = v1 <= math.e, v2 <= math.e
    return CertificatePow(a, nu, nu_p, v1, v2, c1, c2, c1 and c2)


class QuadScan(NamedTuple):
    t_star: float
    a_low: float


def scan_quad_extended() -> QuadScan:
    """Positive root of t = 2 tanh t and the base (2+t)e^{-t} it reaches.

    Without the convexity requirement the quadratic weight works for
    |t| <= 2 tanh|t|, which extends the certified bases down to ``a_low``.
    Whether ``a_low`` itself is included is not settled here.
    """
    t_star = bisect(lambda t: t - 2 * math.tanh(t), 1.0, 2.0)
    return QuadScan(t_star, quad_a(t_star))
