"""
Custom exceptions for the divisor workbench.
"""


class WorkbenchError(Exception):
    """Base exception for all workbench errors."""
    pass


class ConfigurationError(WorkbenchError):
    """Raised when engine configuration is invalid or cannot be loaded."""
    pass


class ComplexValidationError(WorkbenchError):
    """Raised when a metrized complex description violates a model invariant."""
    pass


class DivisorError(WorkbenchError):
    """Base exception for divisor-related errors."""
    pass


class InvalidPointError(DivisorError):
    """Raised when a point does not lie on the complex or is malformed."""
    pass


class NotEffectiveError(DivisorError):
    """Raised when an operation requires an effective divisor."""
    pass


class IntegralityError(DivisorError):
    """Raised when a piecewise-linear function has a non-integer slope."""
    pass


class PreconditionError(WorkbenchError):
    """Raised when an operation is called outside its admissible range."""
    pass


class NotHyperellipticError(PreconditionError):
    """Raised when an operation needs a hyperelliptic complex."""
    pass


class SearchBudgetExceeded(WorkbenchError):
    """Raised when a randomized search exhausts its trial budget."""

    def __init__(self, message: str, trials: int = 0):
        super().__init__(message)
        self.trials = trials


class AssumptionViolation(WorkbenchError):
    """Raised when a theorem-backed expectation fails during a replay."""
    pass


class DocumentParseError(WorkbenchError):
    """Raised when a .tdc document cannot be parsed."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column


class UsageError(WorkbenchError):
    """Raised for invalid command line usage."""
    pass
