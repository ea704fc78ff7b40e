"""Exception hierarchy shared by every module.

Each error exposes ``kind`` (its class name), which the CLI reports in JSON
mode.
"""


class NafieldError(Exception):
    """Base class for all kernel errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ZeroDenominator(NafieldError, ZeroDivisionError):
    pass


class DivisionByZero(NafieldError, ZeroDivisionError):
    pass


class NotInvertible(DivisionByZero):
    """Inverse of an exact zero."""


class IndeterminateAtTruncation(NafieldError):
    """The answer depends on coefficients beyond the known truncation order."""


class DomainError(NafieldError, ValueError):
    pass


class NegativeLeadingCoefficient(DomainError):
    pass


class NotFinite(DomainError):
    pass


class LimitDoesNotExist(DomainError):
    pass


class ZeroPolynomial(DomainError):
    """A polynomial argument has no nonzero coefficient of positive degree."""


class CoefficientRootUnavailable(NafieldError, ValueError):
    """The coefficient domain cannot represent a required root exactly."""


class NotSquareFree(NafieldError, ValueError):
    pass


class NoRealBranch(NafieldError, ValueError):
    pass


class TruncationTooShallow(NafieldError, ValueError):
    pass


class OutsideFragment(NafieldError, ValueError):
    """Result would leave the decidable exp-poly-log fragment."""


class UnsupportedRule(NafieldError, ValueError):
    pass


class MalformedSeries(NafieldError, ValueError):
    pass
