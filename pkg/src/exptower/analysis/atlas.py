"""Depth-bounded picture of the non-representable set X for a <= 1/e.

X is the union of the rays ]m, +inf], [-inf, -m[ and the open intervals
f_gamma(]-1/m, 1/m[) over all finite words gamma; the atlas keeps the words
of length <= depth. Representable points are exactly the complement of X.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import OutOfRange
from ..evaluator import Interval
from ..words import FiniteWord
from ..xreal import INF, MINUS, NINF, PLUS, XReal, apply_sign, check_base
from .fixed_points import INV_E, float_fixed_point, plus_fixed_points

MAX_DEPTH = 22


@dataclass(frozen=True)
class Piece:
    """One generating interval: f_word(core) or f_word(]m, +inf])."""

    lo: float
    hi: float
    word: FiniteWord
    kind: str  # "core" or "ray"

    def contains(self, t: XReal) -> bool:
        return _open_contains(self.lo, self.hi, t)


def _open_contains(lo: float, hi: float, t: XReal) -> bool:
    # Open in the extended line: a ray keeps its infinite end.
    return lo < t < hi or t == lo == NINF or t == hi == INF


@dataclass
class Atlas:
    a: float
    depth: int
    m: float
    components: list[Interval]
    pieces: list[Piece] = field(repr=False)

    def component_of(self, t: XReal) -> Interval | None:
        for c in self.components:
            if _open_contains(c.lo, c.hi, t):
                return c
        return None

    def gaps(self, within: Interval | None = None) -> list[Interval]:
        """Closed gaps between consecutive components, clipped to ``within``."""
        lo_b = within.lo if within else NINF
        hi_b = within.hi if within else INF
        out = []
        for left, right in zip(self.components, self.components[1:]):
            lo, hi = max(left.hi, lo_b), min(right.lo, hi_b)
            if lo <= hi:
                out.append(Interval(lo, hi))
        return out


def _merge(intervals: list[tuple[float, float]]) -> list[Interval]:
    """Union of open intervals; touching ends stay separate (the point is not covered)."""
    merged: list[list[float]] = []
    for lo, hi in sorted(intervals):
        if merged and lo < merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [Interval(lo, hi) for lo, hi in merged]


def atlas_build(a: float, depth: int) -> Atlas:
    a = check_base(a)
    if a > INV_E:
        raise OutOfRange("base must satisfy a ≤ 1/e")
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be in 0..{MAX_DEPTH}")
    # Rounded so that f_+ maps ]m, +inf] into itself in binary64.
    m = float_fixed_point(a, plus_fixed_points(a).m)
    # e^{-am} = 1/m; computing it as f_+(-m) keeps f_+([-inf, -m[) inside the core.
    c = apply_sign(PLUS, a, -m)

    pieces = [
        Piece(m, INF, FiniteWord(()), "ray"),
        Piece(NINF, -m, FiniteWord((MINUS,)), "ray"),
    ]
    level = [Piece(-c, c, FiniteWord(()), "core")]
    pieces.extend(level)
    for _ in range(depth):
        nxt = []
        for piece in level:
            for s in (PLUS, MINUS):
                x, y = apply_sign(s, a, piece.lo), apply_sign(s, a, piece.hi)
                nxt.append(Piece(min(x, y), max(x, y), FiniteWord((s,) + piece.word.signs), "core"))
        pieces.extend(nxt)
        level = nxt
    components = _merge([(p.lo, p.hi) for p in pieces if p.lo < p.hi])
    return Atlas(a, depth, m, components, pieces)


@dataclass(frozen=True)
class Membership:
    in_x: bool
    witness: FiniteWord | None = None
    kind: str | None = None
    piece: Piece | None = None
    component: Interval | None = None


def atlas_membership(atlas: Atlas, t: XReal) -> Membership:
    """Shortest generating word whose interval holds ``t``.

    A negative answer is inconclusive: X is dense, deeper atlases may catch t.
    """
    comp = atlas.component_of(t)
    if comp is None:
        return Membership(False)
    hits = [p for p in atlas.pieces if p.contains(t)]
    best = min(hits, key=lambda p: (len(p.word), p.kind != "ray"))
    return Membership(True, best.word, best.kind, best, comp)


def max_gap(atlas: Atlas) -> float:
    """Longest uncovered stretch inside [-m, m]."""
    gaps = atlas.gaps(Interval(-atlas.m, atlas.m))
    return max((g.width for g in gaps), default=0.0)


__all__ = ["Atlas", "Piece", "Membership", "atlas_build", "atlas_membership", "max_gap"]
