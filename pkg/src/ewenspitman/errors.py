"""Exception types raised by the library."""


class EwensPitmanError(Exception):
    """Base class for every error raised by this package."""


class NotCovering(EwensPitmanError, ValueError):
    pass


class NonzeroConstantTerm(EwensPitmanError, ValueError):
    pass


class NotInvertible(EwensPitmanError, ZeroDivisionError):
    pass


class OrderExceeded(EwensPitmanError, IndexError):
    """Coefficient requested beyond the order a truncated series is valid to."""


class DegenerateParams(EwensPitmanError, ValueError):
    pass


class IdentityViolation(EwensPitmanError, AssertionError):
    """Two routes that must agree exactly produced different values."""

    def __init__(self, message, left=None, right=None, context=None):
        super().__init__(message)
        self.left = left
        self.right = right
        self.context = context or {}


class AlphaZero(EwensPitmanError, ValueError):
    pass


class ParamRange(EwensPitmanError, ValueError):
    pass


class OrderTooLarge(EwensPitmanError, ValueError):
    pass


class OracleBoundExceeded(EwensPitmanError, ValueError):
    pass
