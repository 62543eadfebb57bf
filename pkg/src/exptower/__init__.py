"""Infinite towers of signed exponentials e^{a x} and -e^{a x}."""

from .errors import DomainError, ExpTowerError, InsufficientSigns, NoCycle, OutOfRange, ParseError
from .evaluator import (
    Interval,
    TowerReport,
    TowerStatus,
    classify,
    image_interval,
    interval_sequence,
    limit_interval,
    truncation_value,
    truncations,
)
from .representer import Expansion, RoundTrip, Verdict, alternate_expansion, expand, roundtrip
from .words import FiniteWord, InfiniteWord, concat, format_word, is_increasing, parse_word, sign_at
from .xreal import MINUS, PLUS, Sign, apply_sign, inverse_sign

__version__ = "0.1.0"
