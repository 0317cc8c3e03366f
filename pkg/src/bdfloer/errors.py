"""Exception types shared across the package."""


class BdfloerError(Exception):
    """Base class for all package errors."""


class DivisionByZero(BdfloerError):
    """A continued-fraction tail evaluates to zero where it must be inverted."""


class InvalidParity(BdfloerError):
    """Numerator/denominator parities are not (even, odd)."""


class NotCoprime(BdfloerError):
    """gcd(p, q) != 1."""


class UnsupportedLength(BdfloerError):
    """Tangle word longer than the supported closed-form range."""


class UnsupportedMiddleTerm(BdfloerError):
    """Marking computation requires a middle term in {-1, 0, 1}."""


class NonTransverse(BdfloerError):
    """A tangency or degenerate incidence survived pull-tight."""


class NotAChainComplex(BdfloerError):
    """The differential does not square to zero, or gradings are inconsistent."""


class GradingUnderdetermined(BdfloerError):
    """Relative gradings cannot be propagated to every generator."""


class InvalidParameter(BdfloerError):
    """Model or closed-form parameters out of range."""


class SignMismatch(BdfloerError):
    """Box insertion sign does not match the supplied marking type."""


class OutOfRange(BdfloerError):
    """Closed-form marking count requested at an excluded parameter."""


class InvalidM(BdfloerError):
    """Cable parameter m < 1."""


class WindowViolation(BdfloerError):
    """Truncation step outside the allowed window."""


class NotSimplifiable(BdfloerError):
    """The greedy basis-change search could not reach an alternating standard form."""


class Unclassified(BdfloerError):
    """Tangle outside the five classified cases."""
