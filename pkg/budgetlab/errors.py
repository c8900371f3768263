"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations

from typing import Optional

EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class BudgetLabError(Exception):
    """Base class of every error raised by budgetlab."""

    exit_code = EXIT_NUMERICAL


class UsageError(BudgetLabError):
    """Malformed command-line input or unsupported option combination."""

    exit_code = EXIT_USAGE


class ValidationFailure(BudgetLabError, ValueError):
    """Input that violates a documented precondition."""

    exit_code = EXIT_VALIDATION


class DimensionError(ValidationFailure):
    """Dimension profile or subsystem index is invalid for the operation."""


class DomainError(ValidationFailure):
    """Scalar parameter outside its admissible range."""


class StateValidationError(ValidationFailure):
    """Matrix is not a valid density matrix."""


class NotHermitianError(StateValidationError):
    def __init__(self, deviation: float) -> None:
        super().__init__(f"matrix is not Hermitian (max |m - m^dagger| = {deviation:.3e})")
        self.deviation = deviation


class TraceNotOneError(StateValidationError):
    def __init__(self, trace: complex) -> None:
        super().__init__(f"trace is {trace.real:.12g} instead of 1")
        self.trace = trace


class NotPSDError(StateValidationError):
    def __init__(self, min_eigenvalue: float) -> None:
        super().__init__(f"matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")
        self.min_eigenvalue = min_eigenvalue


class NumericalError(BudgetLabError):
    """A numerical procedure failed to produce a trustworthy result."""

    exit_code = EXIT_NUMERICAL


class FilterExhaustedError(NumericalError):
    def __init__(self, filter_name: str, retries: int) -> None:
        super().__init__(f"filter '{filter_name}' not satisfied after {retries} draws")
        self.filter_name = filter_name
        self.retries = retries


class AnchorSearchError(NumericalError):
    def __init__(self, dimension: int, best: Optional[float]) -> None:
        super().__init__(
            f"no time-odd pure anchor found for dimension {dimension} (best local Q {best})"
        )
        self.dimension = dimension
        self.best = best


class UnderflowError(NumericalError):
    """Normalisation constant vanished below the representable range."""


class ChannelError(NumericalError):
    """A channel produced an invalid output state."""


__all__ = [
    "AnchorSearchError",
    "BudgetLabError",
    "ChannelError",
    "DimensionError",
    "DomainError",
    "EXIT_NUMERICAL",
    "EXIT_USAGE",
    "EXIT_VALIDATION",
    "FilterExhaustedError",
    "NotHermitianError",
    "NotPSDError",
    "NumericalError",
    "StateValidationError",
    "TraceNotOneError",
    "UnderflowError",
    "UsageError",
    "ValidationFailure",
]
