"""Forward evaluation of towers: truncations, image intervals, classification."""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, InsufficientSigns
from .words import FiniteWord, InfiniteWord, Word
from .xreal import INF, MINUS, NINF, Sign, XReal, apply_sign, check_base

DEFAULT_TOL = 1e-12
DEFAULT_MAX_STEPS = 10_000
WINDOW = 8


def default_max_steps() -> int:
    """Iteration cap, overridable through ``EXPTOWER_MAX_STEPS``."""
    raw = os.environ.get("EXPTOWER_MAX_STEPS")
    if raw is None:
        return DEFAULT_MAX_STEPS
    try:
        steps = int(raw)
    except ValueError:
        raise DomainError(f"EXPTOWER_MAX_STEPS must be an integer, got {raw!r}") from None
    if steps < 4:
        raise DomainError("EXPTOWER_MAX_STEPS must be at least 4")
    return steps


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` of the extended line."""

    lo: XReal
    hi: XReal

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise DomainError("interval endpoints cannot be NaN")
        if self.lo > self.hi:
            raise DomainError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")
        object.__setattr__(self, "lo", self.lo + 0.0)
        object.__setattr__(self, "hi", self.hi + 0.0)

    @property
    def width(self) -> float:
        if self.lo == self.hi:
            return 0.0
        return self.hi - self.lo

    def contains(self, t: XReal) -> bool:
        return self.lo <= t <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def interior_disjoint(self, other: "Interval") -> bool:
        """True when ]lo, hi[ and the other open interior do not meet."""
        if self.lo == self.hi or other.lo == other.hi:
            return True
        return self.hi <= other.lo or other.hi <= self.lo

    def image(self, sign: Sign, a: float) -> "Interval":
        x, y = apply_sign(sign, a, self.lo), apply_sign(sign, a, self.hi)
        return Interval(min(x, y), max(x, y))


FULL_LINE = Interval(NINF, INF)


class TowerStatus(str, enum.Enum):
    CONVERGED_FINITE = "ConvergedFinite"
    CONVERGED_PLUS_INF = "ConvergedPlusInf"
    CONVERGED_MINUS_INF = "ConvergedMinusInf"
    TWO_CYCLE = "TwoCycle"
    UNDETERMINED = "Undetermined"

    @property
    def converged(self) -> bool:
        return self.name.startswith("CONVERGED")


@dataclass
class TowerReport:
    status: TowerStatus
    limit: XReal | None = None
    cycle: tuple[float, float] | None = None
    steps_used: int = 0
    trace: list[XReal] | None = field(default=None, repr=False)

    def __post_init__(self):
        if (self.limit is not None) != self.status.converged:
            raise ValueError("limit must be set exactly for converged reports")
        if (self.cycle is not None) != (self.status is TowerStatus.TWO_CYCLE):
            raise ValueError("cycle must be set exactly for two-cycle reports")
        if self.cycle is not None and not self.cycle[0] < self.cycle[1]:
            raise ValueError("cycle pair must be ordered p < q")


def compose(a: float, signs: Sequence[Sign], x: XReal) -> XReal:
    """f_{s1} o ... o f_{sn}(x): the last sign is applied first."""
    for s in reversed(signs):
        x = apply_sign(s, a, x)
    return x


def _signs_for(w: Word, n: int) -> tuple[Sign, ...]:
    if isinstance(w, FiniteWord) and len(w) < n:
        raise InsufficientSigns(f"word has {len(w)} signs, truncation needs {n}")
    return w.head(n)


def truncation_value(a: float, w: Word, n: int) -> XReal:
    """u_n = f_{e1} o ... o f_{en}(1); ``n = 0`` gives 1."""
    a = check_base(a)
    if n < 0:
        raise ValueError("truncation depth must be nonnegative")
    return compose(a, _signs_for(w, n), 1.0)


def iter_truncations(a: float, w: InfiniteWord) -> Iterator[XReal]:
    """Yield u_1, u_2, ... for an eventually periodic word."""
    for u, _ in _iter_with_inner(check_base(a), w):
        yield u


def _iter_with_inner(a: float, w: InfiniteWord) -> Iterator[tuple[XReal, XReal | None]]:
    """Yield (u_n, inner_n) for n = 1, 2, ...

    With prefix P and cycle C = c1..cp, u_{|P|+kp+r} = f_P(F^k(x_r)) where
    F = f_C and x_r = f_{c1..cr}(1). Each residue keeps its own inner orbit,
    which is the exact same sequence of float operations as recomputing u_n
    from scratch, at a cost of O(|P| + p) per term. ``inner_n`` is F^k(x_r),
    or None while n < |P|.
    """
    prefix, cycle = w.prefix, w.cycle
    k, p = len(prefix), len(cycle)
    for n in range(1, k):
        yield compose(a, prefix[:n], 1.0), None
    inner = [compose(a, cycle[:r], 1.0) for r in range(p)]
    n = k
    while True:
        r = (n - k) % p
        if n >= 1:
            yield compose(a, prefix, inner[r]), inner[r]
        inner[r] = compose(a, cycle, inner[r])
        n += 1


def truncations(a: float, w: Word, count: int) -> list[XReal]:
    """[u_1, ..., u_count]."""
    a = check_base(a)
    if isinstance(w, InfiniteWord):
        it = iter_truncations(a, w)
        return [next(it) for _ in range(count)]
    signs = _signs_for(w, count)
    if count <= 512:
        return [compose(a, signs[:n], 1.0) for n in range(1, count + 1)]
    # Column sweep: v[n-1] accumulates f_{e_i} o ... o f_{e_n}(1) for all n >= i.
    v = np.ones(count)
    with np.errstate(over="ignore"):
        for i in range(count, 0, -1):
            col = np.exp(a * v[i - 1:])
            v[i - 1:] = -col if signs[i - 1] is MINUS else col
    return [float(x) + 0.0 for x in v]


def image_interval(a: float, gamma: Word | Sequence[Sign]) -> Interval:
    """f_gamma([-inf, +inf]), pushing both infinite endpoints inner to outer."""
    a = check_base(a)
    signs = gamma.signs if isinstance(gamma, FiniteWord) else tuple(gamma)
    lo, hi = NINF, INF
    for s in reversed(signs):
        lo, hi = apply_sign(s, a, lo), apply_sign(s, a, hi)
        if lo > hi:
            lo, hi = hi, lo
    return Interval(lo, hi)


def interval_sequence(a: float, w: Word, N: int) -> list[Interval]:
    """[I(1, w), ..., I(N, w)], each recomputed from its prefix."""
    if N < 1:
        raise ValueError("N must be at least 1")
    signs = _signs_for(w, N)
    return [image_interval(a, signs[:n]) for n in range(1, N + 1)]


def limit_interval(a: float, w: Word, N: int) -> Interval:
    """I(N, w), the outer estimate of the limit interval I(w)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return image_interval(a, _signs_for(w, N))


def _spread(values: Sequence[float]) -> float:
    return max(values) - min(values)


def _inner_fixed(a: float, cycle: Sequence[Sign], ys: Sequence[XReal | None]) -> bool:
    """Whether each residue's inner value is a fixed point of the cycle map."""
    return all(y is not None and compose(a, cycle, y) == y for y in ys)


def classify(a: float, w: Word, max_steps: int | None = None,
             tol: float = DEFAULT_TOL, keep_trace: bool = False) -> TowerReport:
    """Classify the truncation sequence of ``w`` as a limit, a 2-cycle or neither.

    The scan stops at the first step where one of the criteria holds:

    * ConvergedFinite: the last 8 values lie within ``tol`` of each other.
    * ConvergedPlusInf / ConvergedMinusInf: the last max(8, 2p) values equal
      the same infinity and, for periodic words, the inner cycle orbit sits
      on a fixed point of the cycle map (so the saturation is permanent).
    * TwoCycle: |u_{n+2} - u_n| < tol across the window while consecutive
      values stay at least 10 * tol apart.
    """
    a = check_base(a)
    if max_steps is None:
        max_steps = default_max_steps()
    if max_steps < 4:
        raise ValueError("max_steps must be at least 4")
    if tol <= 0:
        raise ValueError("tol must be positive")

    if isinstance(w, InfiniteWord):
        source = _iter_with_inner(a, w)
        inf_window = max(WINDOW, 2 * len(w.cycle))
    else:
        max_steps = min(max_steps, len(w))
        source = ((u, None) for u in truncations(a, w, max_steps))
        inf_window = WINDOW

    trace: list[XReal] = []
    inner: list[XReal | None] = []

    def report(status, **kw):
        return TowerReport(status, steps_used=len(trace),
                           trace=list(trace) if keep_trace else None, **kw)

    for _ in range(max_steps):
        u, y = next(source)
        trace.append(u)
        inner.append(y)
        n = len(trace)
        last = trace[-1]
        if n >= inf_window and math.isinf(last) and all(v == last for v in trace[-inf_window:]):
            if not isinstance(w, InfiniteWord) or _inner_fixed(a, w.cycle, inner[-len(w.cycle):]):
                status = (TowerStatus.CONVERGED_PLUS_INF if last > 0
                          else TowerStatus.CONVERGED_MINUS_INF)
                return report(status, limit=last)
        if n < WINDOW + 2:
            continue
        tail = trace[-WINDOW:]
        if any(math.isinf(v) for v in trace[-WINDOW - 2:]):
            continue
        if _spread(tail) < tol:
            return report(TowerStatus.CONVERGED_FINITE, limit=last + 0.0)
        seg = trace[-WINDOW - 2:]
        period2 = all(abs(seg[i + 2] - seg[i]) < tol for i in range(WINDOW))
        period1 = all(abs(seg[i + 1] - seg[i]) >= 10 * tol for i in range(WINDOW + 1))
        if period2 and period1:
            p, q = sorted(trace[-2:])
            return report(TowerStatus.TWO_CYCLE, cycle=(p, q))
    return report(TowerStatus.UNDETERMINED)
