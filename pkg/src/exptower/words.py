"""Finite and eventually periodic sign words.

Text syntax::

    WORD  := SIGNS | SIGNS '(' SIGNS+ ')'
    SIGNS := ('+' | '-')*

A parenthesized block repeats forever, so ``"+-(+)"`` is ``+ - + + + ...``.
``all+`` and ``all-`` are accepted as aliases for ``(+)`` and ``(-)``.
Indexing is 1-based throughout.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ParseError
from .xreal import MINUS, PLUS, Sign

GRAMMAR = "WORD := SIGNS | SIGNS '(' SIGNS+ ')' ; SIGNS := ('+'|'-')*  (aliases: all+, all-)"

_WORD_RE = re.compile(r"([+-]*)(?:\(([+-]*)\))?")
_ALIASES = {"all+": "(+)", "all-": "(-)"}


def _signs(text: str) -> tuple[Sign, ...]:
    return tuple(Sign(c) for c in text)


def _text(signs: Iterable[Sign]) -> str:
    return "".join(s.value for s in signs)


@dataclass(frozen=True)
class FiniteWord:
    signs: tuple[Sign, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))

    def __len__(self) -> int:
        return len(self.signs)

    def __str__(self) -> str:
        return _text(self.signs)

    def sign_at(self, n: int) -> Sign:
        if not 1 <= n <= len(self.signs):
            raise IndexError(f"index {n} outside 1..{len(self.signs)}")
        return self.signs[n - 1]

    def head(self, n: int) -> tuple[Sign, ...]:
        if n > len(self.signs):
            raise IndexError(f"word has {len(self.signs)} signs, {n} requested")
        return self.signs[:n]

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s is MINUS)


@dataclass(frozen=True)
class InfiniteWord:
    """``prefix`` followed by ``cycle`` repeated forever."""

    prefix: tuple[Sign, ...]
    cycle: tuple[Sign, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ParseError("an infinite word needs a nonempty cycle")

    def __str__(self) -> str:
        return f"{_text(self.prefix)}({_text(self.cycle)})"

    def sign_at(self, n: int) -> Sign:
        if n < 1:
            raise IndexError(f"index must be >= 1, got {n}")
        k = len(self.prefix)
        if n <= k:
            return self.prefix[n - 1]
        return self.cycle[(n - k - 1) % len(self.cycle)]

    def head(self, n: int) -> tuple[Sign, ...]:
        k = len(self.prefix)
        if n <= k:
            return self.prefix[:n]
        p = len(self.cycle)
        reps = -(-(n - k) // p)
        return (self.prefix + self.cycle * reps)[:n]

    def canonical(self) -> "InfiniteWord":
        """Shortest (prefix, cycle) describing the same infinite sequence."""
        cyc = self.cycle
        p = len(cyc)
        for d in range(1, p + 1):
            if p % d == 0 and cyc[:d] * (p // d) == cyc:
                cyc = cyc[:d]
                break
        pre = self.prefix
        while pre and pre[-1] == cyc[-1]:
            pre = pre[:-1]
            cyc = cyc[-1:] + cyc[:-1]
        return InfiniteWord(pre, cyc)

    def same_sequence(self, other: "InfiniteWord") -> bool:
        return self.canonical() == other.canonical()


Word = Union[FiniteWord, InfiniteWord]


def parse_word(text: str) -> Word:
    s = text.strip().replace("−", "-")
    s = _ALIASES.get(s, s)
    match = _WORD_RE.fullmatch(s)
    if match is None:
        raise ParseError(f"cannot parse sign word {text!r}; grammar: {GRAMMAR}")
    prefix, cycle = match.groups()
    if cycle is None:
        return FiniteWord(_signs(prefix))
    if not cycle:
        raise ParseError(f"empty cycle in {text!r}; grammar: {GRAMMAR}")
    return InfiniteWord(_signs(prefix), _signs(cycle))


def format_word(w: Word) -> str:
    return str(w)


def sign_at(w: Word, n: int) -> Sign:
    return w.sign_at(n)


def is_increasing(word: Word | Iterable[Sign]) -> bool:
    """True when f_word is increasing, i.e. it holds an even number of minus signs."""
    signs = word.signs if isinstance(word, FiniteWord) else tuple(word)
    return sum(1 for s in signs if s is MINUS) % 2 == 0


def concat(gamma: FiniteWord, w: Word) -> Word:
    if isinstance(w, FiniteWord):
        return FiniteWord(gamma.signs + w.signs)
    return InfiniteWord(gamma.signs + w.prefix, w.cycle)


def first_difference(w1: Word, w2: Word) -> int | None:
    """First 1-based index where the words differ, or None if they never do.

    For finite words only the common length is compared.
    """
    if isinstance(w1, InfiniteWord) and isinstance(w2, InfiniteWord):
        horizon = (max(len(w1.prefix), len(w2.prefix))
                   + math.lcm(len(w1.cycle), len(w2.cycle)))
    else:
        horizon = min(_horizon(w1), _horizon(w2))
    for n in range(1, horizon + 1):
        if w1.sign_at(n) is not w2.sign_at(n):
            return n
    return None


def _horizon(w: Word) -> int:
    return len(w) if isinstance(w, FiniteWord) else 1 << 62


def all_plus() -> InfiniteWord:
    return InfiniteWord((), (PLUS,))


def all_minus() -> InfiniteWord:
    return InfiniteWord((), (MINUS,))
