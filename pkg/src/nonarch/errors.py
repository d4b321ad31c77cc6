"""Exception hierarchy shared by all modules."""


class NonArchError(Exception):
    """Base class for all library errors."""

    module = "nonarch"


class DivisionByZero(NonArchError, ZeroDivisionError):
    module = "localfield"


class PrecisionExhausted(NonArchError):
    """Every stored digit cancelled; the value cannot be told apart from
    elements of higher valuation.  ``guaranteed_ord`` is a certified lower
    bound on the valuation of the true result."""

    module = "localfield"

    def __init__(self, message: str = "all stored digits cancelled", guaranteed_ord=None):
        super().__init__(message)
        self.guaranteed_ord = guaranteed_ord


class NotIntegral(NonArchError):
    module = "localfield"


class DyadicField(NonArchError):
    module = "localfield"


class InsufficientPrecision(NonArchError):
    module = "characters"


class TooLarge(NonArchError):
    module = "residue"


class LevelTooLow(NonArchError):
    module = "orbital"


class DimensionMismatch(NonArchError):
    module = "matalg"


class NotSymmetric(NonArchError):
    module = "matalg"


class InvalidParam(NonArchError):
    module = "params"


class EqualParams(NonArchError):
    module = "params"
