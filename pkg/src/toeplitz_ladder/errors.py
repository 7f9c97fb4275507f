"""Exception hierarchy. Every library error derives from ``ToeplitzLadderError``."""

from __future__ import annotations


class ToeplitzLadderError(Exception):
    """Base class for library errors."""


class DomainError(ToeplitzLadderError, ValueError):
    """Argument outside the domain of a function (poles, parameter constraints)."""


class DivergentMomentError(DomainError):
    """Fourier coefficients do not exist (weight not integrable)."""


class RangeError(ToeplitzLadderError, IndexError):
    """Requested index outside the computed or cached range."""


class DegenerateWeightError(ToeplitzLadderError, ArithmeticError):
    """A leading principal Toeplitz minor vanishes."""

    def __init__(self, n: int, message: str | None = None):
        self.n = n
        super().__init__(message or f"leading principal minor of order {n} vanishes")


class SingularStepError(ToeplitzLadderError, ZeroDivisionError):
    """A recurrence step divides by zero."""


class AccuracyError(ToeplitzLadderError, ArithmeticError):
    """Quadrature failed to converge; carries the best available estimate."""

    def __init__(self, message: str, best_estimate=None, error_estimate: float | None = None):
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        super().__init__(message)


class InconsistencyError(ToeplitzLadderError, ArithmeticError):
    """A quantity asserted to be constant or identical is not, beyond tolerance."""

    def __init__(self, message: str, values=None):
        self.values = values
        super().__init__(message)
