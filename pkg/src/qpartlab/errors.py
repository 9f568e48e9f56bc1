"""Exception hierarchy shared by every qpartlab module."""


class QplError(Exception):
    """Base class for all library errors."""


class NotAUnit(QplError, ArithmeticError):
    """Raised when a series cannot be inverted in the power-series ring."""


class OutOfValidRange(QplError, IndexError):
    """Raised when reading a coefficient past the exact range of a series."""


class NegativeExponentFactor(QplError, ValueError):
    """Raised when a product factor would carry a negative power of q."""


class InadmissibleParameters(QplError, ValueError):
    """Raised when parameters of the master sum make a denominator degenerate."""


class BudgetExceeded(QplError, ValueError):
    """Raised when an enumeration request exceeds the configured bound."""


class NonConvergent(QplError, ArithmeticError):
    """Raised when a numeric series neither terminates nor converges."""


class DegenerateDenominator(QplError, ZeroDivisionError):
    """Raised when a numeric denominator factor falls below the magnitude floor."""
