"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class SwiptError(Exception):
    """Base class for all errors raised by :mod:`swipt_relay`."""


class DomainError(SwiptError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """A special function was evaluated exactly at one of its poles."""


class NumericalError(SwiptError, ArithmeticError):
    """Base class for failures of a numerical procedure.

    ``diagnostics`` carries whatever the failing routine knew at the time
    (step sizes, partial estimates, condition numbers, ...).
    """

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        extra = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
        return f"{base} ({extra})"


class ConvergenceError(NumericalError):
    """Quadrature or series refinement did not reach its tolerance."""


class UnsupportedError(NumericalError):
    """The requested parameter class is not handled by the evaluator."""


class ConditioningError(NumericalError):
    """A linear system is too ill-conditioned to give meaningful digits."""


class PoleProximityError(NumericalError):
    """A rational approximant was evaluated too close to one of its poles."""


class DegenerateError(NumericalError):
    """A statistic is undefined because an input quantity underflowed."""
