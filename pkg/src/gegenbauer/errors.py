"""Exception hierarchy shared by all evaluators."""

from __future__ import annotations


class GegenbauerError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GegenbauerError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """A gamma function (or series denominator) hits a pole."""


class BranchError(DomainError):
    """A point on a branch cut was passed without choosing a side."""


class AccuracyError(GegenbauerError):
    """An approximation was requested where it cannot meet its accuracy contract."""


class RegimeError(GegenbauerError):
    """An asymptotic formula was requested outside its validity region.

    Parameters
    ----------
    message : str
        Human readable reason.
    report : object, optional
        Threshold record (usually a ``RegimeReport``) describing which test
        failed and by how much.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NumericalError(GegenbauerError, ArithmeticError):
    """A series did not converge or a value could not be represented."""


class NoRouteError(NumericalError):
    """No convergent representation is available at the requested point."""


class OutOfRegionError(NoRouteError):
    """The series representation of C does not converge at this point."""
