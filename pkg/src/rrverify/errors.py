"""Exception types shared across the package."""


class RRVerifyError(Exception):
    """Base class for all package errors."""


class BadParameters(RRVerifyError, ValueError):
    """Parameters fall outside the documented range."""


class NotInvertible(RRVerifyError, ArithmeticError):
    """The lowest coefficient of a series is not a single x-monomial."""


class DivergentProduct(RRVerifyError, ValueError):
    """An infinite product with step <= 0 was requested."""


class BudgetExceeded(RRVerifyError):
    """An enumeration would exceed the configured ceiling."""


class NotStrict(RRVerifyError, ValueError):
    """A strict partition was required."""


class UnknownIdentity(RRVerifyError, KeyError):
    """No identity is registered under the requested id."""

    def __str__(self):
        return f"unknown identity {self.args[0]!r}" if self.args else "unknown identity"
