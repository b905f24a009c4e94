"""Exception types shared across the package."""

from __future__ import annotations


class RRLabError(Exception):
    """Base class for all package errors."""


class ZeroLeadingCoefficient(RRLabError, ZeroDivisionError):
    """Inverting a series whose trusted window is identically zero."""


class TooManyVariables(RRLabError, ValueError):
    pass


class NoStabilization(RRLabError, RuntimeError):
    """A limit in the rectangle index did not settle before the cap."""


class DegenerateSpecialization(RRLabError, ValueError):
    """A specialization makes a denominator vanish."""


class PrecisionFailure(RRLabError, ArithmeticError):
    """A numerical route could not certify the requested accuracy."""


class NotInFunctionField(RRLabError, ValueError):
    """A Siegel product fails the level-N membership congruences."""


class UsageError(RRLabError, ValueError):
    pass


class IndexOutOfRange(RRLabError, ValueError):
    pass


class InvalidFamilyParams(RRLabError, ValueError):
    pass


class NotUpperHalfPlane(RRLabError, ValueError):
    pass


class NotADiscriminant(RRLabError, ValueError):
    pass


class NonInvertibleResult(RRLabError, ArithmeticError):
    pass


class NonIntegralCoefficients(RRLabError, ArithmeticError):
    """An orbit polynomial has coefficients that are not near integers."""


class NoRelationFound(RRLabError, ArithmeticError):
    pass


class DenominatorMismatch(RRLabError, ValueError):
    pass
