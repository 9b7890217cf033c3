class TrizetaError(Exception):
    """Base class for library errors."""


class ParseError(TrizetaError, ValueError):
    """Malformed curve or family input."""


class DomainError(TrizetaError, ValueError):
    """Input is well formed but outside the mathematical domain of the operation."""


class CapExceeded(TrizetaError):
    """An enumeration or table would exceed its configured size cap."""


class RoundingError(TrizetaError, ArithmeticError):
    """A floating-point character sum did not land close enough to an integer."""
