"""Utility functions for lrckit."""

import math
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

Locality = Union[int, float]


def ceil_div(a: int, b: int) -> int:
    """Integer ceiling of a / b for positive b."""
    return -(-a // b)


def support(vector: Sequence[int]) -> Tuple[int, ...]:
    """Indices of the nonzero coordinates of a vector.

    Args:
        vector: Integer-encoded field vector

    Returns:
        Sorted tuple of nonzero positions
    """
    return tuple(i for i, v in enumerate(vector) if v != 0)


def weight(vector: Sequence[int]) -> int:
    """Hamming weight of a vector."""
    return sum(1 for v in vector if v != 0)


def unit_vector(k: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(k))


def subsets_by_size(
    universe: Sequence[int], max_size: int, min_size: int = 0
) -> Iterator[Tuple[int, ...]]:
    """Yield subsets in increasing size, lexicographically within a size."""
    for size in range(min_size, min(max_size, len(universe)) + 1):
        yield from combinations(universe, size)


def complement(indices: Iterable[int], n: int) -> Tuple[int, ...]:
    taken = set(indices)
    return tuple(i for i in range(n) if i not in taken)


def consecutive_blocks(total: int, size: int, start: int = 0) -> List[Tuple[int, ...]]:
    """Split ``range(start, start + total)`` into consecutive blocks of ``size``.

    The last block is short when ``size`` does not divide ``total``.
    """
    return [
        tuple(range(start + offset, start + min(offset + size, total)))
        for offset in range(0, total, size)
    ]


def format_locality(value: Locality) -> str:
    """Render a locality, using ``inf`` for unbounded values."""
    if math.isinf(value):
        return "inf"
    return str(int(value))


def parse_locality(text: Union[str, int, float]) -> Locality:
    """Inverse of :func:`format_locality`.

    Raises:
        ValueError: If the text is neither an integer nor ``inf``
    """
    if isinstance(text, str):
        if text.strip().lower() in ("inf", "infinity"):
            return math.inf
        return int(text)
    if isinstance(text, float) and math.isinf(text):
        return math.inf
    return int(text)


def format_indices(indices: Iterable[int]) -> str:
    """Render an index set as ``{0,1,2}`` for reports."""
    return "{" + ",".join(str(i) for i in indices) + "}"
