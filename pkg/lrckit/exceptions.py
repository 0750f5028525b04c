"""Custom exceptions for lrckit."""

from typing import Optional, Sequence


class LrcKitError(Exception):
    """Base exception for all lrckit errors."""

    exit_code: int = 1

    def __init__(self, message: str, details: Optional[str] = None) -> None:
        self.message = message
        self.details = details
        super().__init__(message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message}: {self.details}"
        return self.message


class ParameterError(LrcKitError):
    """Raised when an operation's preconditions on its parameters are violated."""

    exit_code = 2


class FieldError(ParameterError):
    """Raised for invalid field parameters or illegal field operations."""


class FieldZeroDivisionError(FieldError, ZeroDivisionError):
    """Raised on inversion of, or division by, the zero element."""

    def __init__(self, operation: str) -> None:
        super().__init__(f"Cannot {operation} by zero in a finite field")
        self.operation = operation


class DimensionError(ParameterError):
    """Raised when vector or matrix shapes do not line up."""

    def __init__(self, what: str, expected: object, found: object) -> None:
        message = f"Dimension mismatch for {what}"
        details = f"expected {expected}, found {found}"
        super().__init__(message, details)
        self.expected = expected
        self.found = found


class MalformedInputError(ParameterError):
    """Raised when points do not have the supports their support graph claims."""


class CodeFileError(LrcKitError):
    """Raised when a code file or word file cannot be parsed."""

    exit_code = 2

    def __init__(self, path: str, reason: str, line: Optional[int] = None) -> None:
        message = f"Could not read '{path}'"
        details = f"line {line}: {reason}" if line is not None else reason
        super().__init__(message, details)
        self.path = path
        self.reason = reason
        self.line = line


class NotApplicableError(LrcKitError):
    """Raised when a theorem's preconditions do not hold for the given input."""

    exit_code = 2

    def __init__(self, operation: str, unmet: Sequence[str]) -> None:
        message = f"{operation} is not applicable"
        details = "; ".join(unmet) if unmet else None
        super().__init__(message, details)
        self.operation = operation
        self.unmet = list(unmet)


class NotSystematicError(NotApplicableError):
    """Raised when a code lacks the k unit-vector columns of a systematic code."""

    def __init__(self, operation: str, missing: Sequence[int]) -> None:
        super().__init__(
            operation, [f"no unit column for information indices {list(missing)}"]
        )
        self.missing = list(missing)


class SamplingFailedError(LrcKitError):
    """Raised when a seeded sampler exhausts its retry limit."""

    exit_code = 3

    def __init__(self, sampler: str, first_seed: int, attempts: int) -> None:
        message = f"Sampling failed in {sampler}"
        details = (
            f"{attempts} attempts starting at seed {first_seed} did not verify; "
            "try a larger field or another seed"
        )
        super().__init__(message, details)
        self.sampler = sampler
        self.first_seed = first_seed
        self.attempts = attempts


class BudgetExceededError(LrcKitError):
    """Raised when an enumeration would exceed its configured budget."""

    exit_code = 4

    def __init__(self, budget: str, required: int, limit: int) -> None:
        message = f"Enumeration budget '{budget}' exceeded"
        details = f"needs {required}, limit {limit}"
        super().__init__(message, details)
        self.budget = budget
        self.required = required
        self.limit = limit


class IntegrityError(LrcKitError):
    """Raised when data contradicts itself: inconsistent symbols or stale metadata."""

    exit_code = 6

    def __init__(self, message: str, positions: Optional[Sequence[int]] = None) -> None:
        details = f"positions {list(positions)}" if positions else None
        super().__init__(message, details)
        self.positions = list(positions) if positions else []
