"""Input validators, enumeration budgets and audit logging for lrckit."""

import logging
import threading
from math import comb
from typing import Iterable, Optional, Tuple

import galois

from .exceptions import BudgetExceededError, ParameterError

logger = logging.getLogger(__name__)

# Largest field order whose products still fit the int64 element word.
MAX_FIELD_ORDER = 2**31
MAX_LOGGED_VALUE_LENGTH = 200


def sanitize_string(value: str, max_length: int = MAX_LOGGED_VALUE_LENGTH) -> str:
    """Sanitize a string for safe logging and display.

    Args:
        value: String to sanitize
        max_length: Maximum length to allow

    Returns:
        Sanitized string
    """
    if not isinstance(value, str):
        value = str(value)

    sanitized = "".join(c for c in value if c.isprintable())
    if len(sanitized) > max_length:
        sanitized = sanitized[:max_length] + "..."

    return sanitized


def validate_positive(name: str, value: int, minimum: int = 1) -> None:
    """Validate that an integer parameter is at least ``minimum``.

    Raises:
        ParameterError: If the value is not an int or is too small
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParameterError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ParameterError(f"{name} must be >= {minimum}, got {value}")


def validate_prime_power(q: int) -> Tuple[int, int]:
    """Validate a field order and split it as ``p**m``.

    Args:
        q: Field order

    Returns:
        Tuple ``(p, m)``

    Raises:
        ParameterError: If q is not a prime power or is too large
    """
    validate_positive("q", q, minimum=2)
    if q > MAX_FIELD_ORDER:
        raise ParameterError(
            f"Field order {q} exceeds the element word ({MAX_FIELD_ORDER})"
        )
    if not galois.is_prime_power(q):
        raise ParameterError(f"q = {q} is not a prime power")
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


def validate_index_set(
    name: str, indices: Iterable[int], upper: int, size: Optional[int] = None
) -> Tuple[int, ...]:
    """Validate a set of 0-based indices into ``range(upper)``.

    Args:
        name: Name used in error messages
        indices: Indices to validate
        upper: Exclusive upper bound
        size: Required cardinality, if any

    Returns:
        The indices as a sorted tuple

    Raises:
        ParameterError: On out-of-range, repeated or wrongly sized input
    """
    items = list(indices)
    result = tuple(sorted(set(items)))
    if len(result) != len(items):
        raise ParameterError(f"{name} contains repeated indices: {items}")
    for index in result:
        if isinstance(index, bool) or not isinstance(index, int):
            raise ParameterError(f"{name} must contain integers, got {index!r}")
        if not 0 <= index < upper:
            raise ParameterError(f"{name} index {index} outside range [0, {upper})")
    if size is not None and len(result) != size:
        raise ParameterError(
            f"{name} must have exactly {size} elements, got {len(result)}"
        )
    return result


def check_budget(budget: str, required: int, limit: int) -> None:
    """Refuse an enumeration whose size exceeds its budget.

    Raises:
        BudgetExceededError: If ``required > limit``
    """
    if required > limit:
        logger.warning(f"Budget {budget} exceeded: {required} > {limit}")
        raise BudgetExceededError(budget, required, limit)


def subsets_up_to(n: int, max_size: int) -> int:
    """Number of subsets of an n-set with at most ``max_size`` elements."""
    return sum(comb(n, s) for s in range(0, min(n, max_size) + 1))


class BudgetMeter:
    """Counts work units against a budget and raises once it is spent."""

    def __init__(self, budget: str, limit: int) -> None:
        self.budget = budget
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, units: int = 1) -> None:
        with self._lock:
            self.used += units
            used = self.used
        if used > self.limit:
            logger.warning(f"Budget {self.budget} exhausted after {used} units")
            raise BudgetExceededError(self.budget, used, self.limit)


def audit_log(operation: str, **kwargs: object) -> None:
    """Log a user-facing operation for auditing.

    Args:
        operation: Type of operation being performed
        **kwargs: Additional context information
    """
    sanitized_kwargs = {
        key: sanitize_string(str(value)) for key, value in kwargs.items()
    }

    logger.info(
        f"AUDIT: {operation}",
        extra={"operation": operation, "context": sanitized_kwargs},
    )
