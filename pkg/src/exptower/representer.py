"""Greedy sign expansions of a target and round-trip checks."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .evaluator import DEFAULT_TOL, WINDOW, truncations
from .words import FiniteWord, InfiniteWord, Word
from .xreal import INF, MINUS, PLUS, Sign, XReal, check_base, inverse_sign, xreal


@dataclass
class Expansion:
    word: Word
    signs: tuple[Sign, ...]
    orbit: list[XReal] = field(repr=False)
    hit_zero_at: int | None = None
    tail_periodic: bool = False


def _backward_orbit(a: float, t: XReal, n_signs: int, flip_at: int | None = None) -> Expansion:
    """Pull ``t`` back through f_+ / f_- greedily.

    u_0 = t, the sign at step k+1 is the one whose image contains u_k (PLUS
    at 0 unless ``flip_at == k``) and u_{k+1} is the preimage. Once u_k is
    +inf the rest of the word is forced to be all plus.
    """
    orbit = [t]
    signs: list[Sign] = []
    hit_zero = None
    periodic_from = None
    u = t
    for k in range(n_signs):
        if u == 0 and hit_zero is None:
            hit_zero = k
        if u == INF and periodic_from is None:
            periodic_from = k
        sign = Sign.of(u)
        if u == 0 and k == flip_at:
            sign = MINUS
        u = inverse_sign(sign, a, u)
        signs.append(sign)
        orbit.append(u)
    if periodic_from is None and u == INF:
        periodic_from = n_signs
    if periodic_from is not None:
        word: Word = InfiniteWord(tuple(signs[:periodic_from]), (PLUS,))
    else:
        word = FiniteWord(tuple(signs))
    return Expansion(word, tuple(signs), orbit, hit_zero, periodic_from is not None)


def expand(a: float, t, n_signs: int) -> Expansion:
    """Canonical expansion of ``t``: ties at 0 take the plus sign."""
    a = check_base(a)
    if n_signs < 1:
        raise ValueError("n_signs must be at least 1")
    return _backward_orbit(a, xreal(t), n_signs)


def alternate_expansion(a: float, t, n_signs: int) -> Expansion | None:
    """The second expansion, which exists when the greedy orbit hits exactly 0.

    At that index the minus sign is taken instead; both choices pull 0 back
    to -inf so the words agree afterwards.
    """
    first = expand(a, t, n_signs)
    if first.hit_zero_at is None:
        return None
    return _backward_orbit(check_base(a), xreal(t), n_signs, flip_at=first.hit_zero_at)


class Verdict(str, enum.Enum):
    REPRESENTED = "Represented"
    NOT_REPRESENTED = "NotRepresented"
    UNDETERMINED = "Undetermined"


@dataclass
class RoundTrip:
    target: XReal
    residuals: list[float] = field(repr=False)
    final_residual: float
    verdict: Verdict
    expansion: Expansion = field(repr=False)
    values: list[XReal] = field(repr=False)


def residual(u: XReal, t: XReal) -> float:
    """|u - t|; for an infinite target, 0 on an exact hit and +inf otherwise."""
    if math.isinf(t) or math.isinf(u):
        return 0.0 if u == t else INF
    return abs(u - t)


def eventually_decreasing(residuals: list[float]) -> bool:
    """The back half of the trace stays strictly below the worst of the front
    half (an all-zero trace counts as decreasing)."""
    n = len(residuals)
    if n < 2:
        return True
    front, back = residuals[: n // 2], residuals[n // 2:]
    return max(back) < max(front) or max(residuals) == 0


def roundtrip(a: float, t, n_signs: int, tol: float = DEFAULT_TOL) -> RoundTrip:
    """Expand ``t``, re-evaluate truncations of the expansion and compare with ``t``."""
    a = check_base(a)
    t = xreal(t)
    exp_ = expand(a, t, n_signs)
    values = truncations(a, exp_.word, n_signs)
    res = [residual(u, t) for u in values]
    final = res[-1]
    tail = res[-WINDOW:]
    if final < tol and eventually_decreasing(res):
        verdict = Verdict.REPRESENTED
    elif all(r > 10 * tol for r in tail) and (
            all(math.isinf(r) for r in tail)
            or (not any(math.isinf(r) for r in tail) and max(tail) - min(tail) < tol)):
        verdict = Verdict.NOT_REPRESENTED
    else:
        verdict = Verdict.UNDETERMINED
    return RoundTrip(t, res, final, verdict, exp_, values)
