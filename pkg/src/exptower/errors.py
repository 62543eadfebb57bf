"""Exception hierarchy shared by all modules."""


class ExpTowerError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ExpTowerError, ValueError):
    """An argument lies outside the domain of the requested map."""


class ParseError(ExpTowerError, ValueError):
    """A sign word could not be parsed."""


class InsufficientSigns(ExpTowerError, ValueError):
    """A finite word is shorter than the requested truncation depth."""


class OutOfRange(DomainError):
    """The base is outside the range where the quantity exists."""


class NoCycle(DomainError):
    """The all-minus word has no attracting two-cycle at this base."""
