"""Extended reals and the two signed exponential maps.

Values on the extended line are plain Python floats; ``math.inf`` and
``-math.inf`` are legal, NaN never is, and ``-0.0`` is folded into ``0.0``.
"""

from __future__ import annotations

import enum
import math

from .errors import DomainError

XReal = float

INF = math.inf
NINF = -math.inf


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def of(cls, x: float) -> "Sign":
        """Sign whose image contains ``x``; zero goes to PLUS."""
        return cls.PLUS if x >= 0 else cls.MINUS


PLUS = Sign.PLUS
MINUS = Sign.MINUS


def xreal(x) -> XReal:
    """Coerce ``x`` to a normalized extended real."""
    v = float(x)
    if math.isnan(v):
        raise DomainError("NaN is not an extended real")
    return v + 0.0  # -0.0 + 0.0 == +0.0


def check_base(a) -> float:
    a = float(a)
    if not (a > 0 and math.isfinite(a)):
        raise DomainError(f"base must be a positive finite real, got {a!r}")
    return a


def exp_sat(y: float) -> float:
    """``e**y`` on the extended line, saturating to +inf on overflow."""
    try:
        return math.exp(y)
    except OverflowError:
        return INF


def apply_sign(sign: Sign, a: float, x: XReal) -> XReal:
    """f_+(x) = e^{ax}, f_-(x) = -e^{ax} with e^{-inf} = 0, e^{+inf} = +inf."""
    v = exp_sat(a * x)
    if sign is MINUS:
        v = -v
    return v + 0.0


def inverse_sign(sign: Sign, a: float, t: XReal) -> XReal:
    """Preimage of ``t`` under f_sign, i.e. ``ln|t| / a``.

    Zero has preimage -inf under both maps.
    """
    if sign is PLUS and t < 0:
        raise DomainError(f"f_+ only takes values in [0, +inf], got {t!r}")
    if sign is MINUS and t > 0:
        raise DomainError(f"f_- only takes values in [-inf, 0], got {t!r}")
    if math.isnan(t):
        raise DomainError("NaN is not an extended real")
    mag = abs(t)
    if mag == 0:
        return NINF
    return math.log(mag) / a + 0.0


def format_xreal(x: XReal) -> str:
    if x == INF:
        return "+inf"
    if x == NINF:
        return "-inf"
    return repr(x)


_NAMED = {"e": math.e, "pi": math.pi, "inf": INF, "infinity": INF, "∞": INF}


def parse_xreal(text: str) -> XReal:
    """Parse a float literal, ``e``, ``pi`` or ``inf`` with an optional sign."""
    s = text.strip().lower().replace("−", "-")
    neg = s.startswith("-")
    body = s[1:] if s[:1] in "+-" and len(s) > 1 else s
    if body in _NAMED:
        v = _NAMED[body]
        return xreal(-v if neg else v)
    try:
        return xreal(float(s))
    except ValueError:
        raise DomainError(f"not an extended real: {text!r}") from None
