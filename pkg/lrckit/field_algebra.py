"""Finite fields GF(p^m) and dense linear algebra over them.

Field arithmetic and Gaussian elimination are delegated to ``galois``; this
module pins down the field representation (a lexicographically least monic
irreducible modulus, elements encoded as integers whose base-p digits are the
polynomial coefficients) and exposes rank, kernel and solve with deterministic
outputs.
"""

import logging
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Type, Union

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import DimensionError, FieldError, FieldZeroDivisionError
from .limits import MAX_FIELD_ORDER

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@lru_cache(maxsize=None)
def _galois_class(p: int, m: int, modulus: Tuple[int, ...]) -> Type[galois.FieldArray]:
    if m == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p))
    return galois.GF(p**m, irreducible_poly=poly)


class FieldSpec(BaseModel):
    """A finite field GF(p^m) with a fixed modulus polynomial."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., description="Prime characteristic")
    m: int = Field(1, description="Extension degree")
    modulus: Tuple[int, ...] = Field(
        ..., description="Monic modulus coefficients, highest degree first"
    )

    @model_validator(mode="after")
    def _check_field(self) -> "FieldSpec":
        if self.m < 1:
            raise FieldError(f"Extension degree must be >= 1, got {self.m}")
        if self.p < 2 or not galois.is_prime(self.p):
            raise FieldError(f"Characteristic {self.p} is not prime")
        if self.p**self.m > MAX_FIELD_ORDER:
            raise FieldError(
                f"GF({self.p}^{self.m}) overflows the element word",
                f"order must be <= {MAX_FIELD_ORDER}",
            )
        if len(self.modulus) != self.m + 1 or self.modulus[0] != 1:
            raise FieldError(
                f"Modulus must be monic of degree {self.m}", f"got {list(self.modulus)}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise FieldError(f"Modulus coefficients must lie in [0, {self.p})")
        if self.m > 1:
            poly = galois.Poly(list(self.modulus), field=galois.GF(self.p))
            if not poly.is_irreducible():
                raise FieldError(f"Modulus {poly} is reducible over GF({self.p})")
        return self

    @property
    def order(self) -> int:
        """Number of field elements q = p^m."""
        return self.p**self.m

    @property
    def gf(self) -> Type[galois.FieldArray]:
        """The ``galois`` array class implementing this field."""
        return _galois_class(self.p, self.m, self.modulus)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def array(self, values: object) -> galois.FieldArray:
        """Build a field array from nested integer sequences."""
        try:
            return self.gf(np.asarray(values, dtype=np.int64))
        except (ValueError, TypeError) as e:
            raise FieldError(f"Values are not elements of {self}", str(e))

    def zeros(self, shape: Union[int, Tuple[int, ...]]) -> galois.FieldArray:
        return self.gf.Zeros(shape)

    def __str__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Create GF(p^m) with the lexicographically least monic irreducible modulus.

    Prime fields get the modulus ``x``, which plays no role in their arithmetic.

    Raises:
        FieldError: If p is not prime, m < 1, or p^m overflows the element word
    """
    if isinstance(p, bool) or not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise FieldError(f"Characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"Extension degree must be >= 1, got {m}")
    if p**m > MAX_FIELD_ORDER:
        raise FieldError(
            f"GF({p}^{m}) overflows the element word",
            f"order must be <= {MAX_FIELD_ORDER}",
        )
    if m == 1:
        modulus: Tuple[int, ...] = (1, 0)
    else:
        poly = galois.irreducible_poly(p, m, method="min")
        modulus = tuple(int(c) for c in poly.coeffs)
    spec = FieldSpec(p=p, m=m, modulus=modulus)
    logger.debug(f"Created {spec} with modulus {list(modulus)}")
    return spec


class FieldElement:
    """A single element of a finite field, encoded as an integer in [0, q)."""

    __slots__ = ("value", "spec")

    def __init__(self, value: int, spec: FieldSpec) -> None:
        if not 0 <= int(value) < spec.order:
            raise FieldError(f"{value} is not an element of {spec}")
        self.value = int(value)
        self.spec = spec

    def _scalar(self) -> galois.FieldArray:
        return self.spec.gf(self.value)

    def _coerce(self, other: object) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError(f"Cannot mix elements of {self.spec} and {other.spec}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return FieldElement(other % self.spec.order, self.spec)
        raise FieldError(f"Unsupported operand {other!r}")

    def _wrap(self, result: galois.FieldArray) -> "FieldElement":
        return FieldElement(int(result), self.spec)

    def __add__(self, other: object) -> "FieldElement":
        return self._wrap(self._scalar() + self._coerce(other)._scalar())

    def __sub__(self, other: object) -> "FieldElement":
        return self._wrap(self._scalar() - self._coerce(other)._scalar())

    def __mul__(self, other: object) -> "FieldElement":
        return self._wrap(self._scalar() * self._coerce(other)._scalar())

    def __truediv__(self, other: object) -> "FieldElement":
        return self * self._coerce(other).inverse()

    def __neg__(self) -> "FieldElement":
        return self._wrap(-self._scalar())

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._wrap(self._scalar() ** exponent)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise FieldZeroDivisionError("invert")
        return self._wrap(np.reciprocal(self._scalar()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.spec))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.spec})"


_BINARY_OPS: Dict[str, Callable[[FieldElement, FieldElement], FieldElement]] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b if b.value != 0 else _raise_div(),
}


def _raise_div() -> FieldElement:
    raise FieldZeroDivisionError("divide")


def arith(
    op: str, a: FieldElement, b: Union[FieldElement, int, None] = None
) -> FieldElement:
    """Apply one field operation.

    Args:
        op: One of add, sub, mul, div, pow, inv, neg
        a: Left operand
        b: Right operand for binary operations, integer exponent for pow

    Raises:
        FieldError: On unknown operations or operands from different fields
        FieldZeroDivisionError: On inv(0) or division by 0
    """
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if op == "pow":
        if not isinstance(b, int) or isinstance(b, bool):
            raise FieldError("pow needs an integer exponent")
        return a**b
    if op not in _BINARY_OPS:
        raise FieldError(f"Unknown field operation '{op}'")
    if not isinstance(b, FieldElement):
        raise FieldError(f"{op} needs two field elements")
    if a.spec != b.spec:
        raise FieldError(f"Cannot mix elements of {a.spec} and {b.spec}")
    return _BINARY_OPS[op](a, b)


# ---------------------------------------------------------------------------
# Array-level linear algebra shared by every module.


def to_vector(array: galois.FieldArray) -> Vector:
    """Convert a 1-D field array into a tuple of ints."""
    return tuple(int(v) for v in np.asarray(array).reshape(-1))


def to_rows(array: galois.FieldArray) -> List[Vector]:
    """Convert a 2-D field array into a list of integer row tuples."""
    return [to_vector(row) for row in array]


def rref(
    array: galois.FieldArray, ncols: Optional[int] = None
) -> Tuple[galois.FieldArray, List[int]]:
    """Reduced row echelon form and pivot columns.

    Pivoting takes the first nonzero entry of each column in row order, so the
    result is deterministic. Only the first ``ncols`` columns are eliminated.
    """
    rows, cols = array.shape
    limit = cols if ncols is None else ncols
    if rows == 0 or cols == 0 or limit == 0:
        return array.copy(), []
    reduced = array.row_reduce(ncols=limit)
    pivots = []
    for row in reduced:
        nonzero = np.flatnonzero(np.asarray(row[:limit]) != 0)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return reduced, pivots


def array_rank(array: galois.FieldArray) -> int:
    """Row rank of a field matrix."""
    return len(rref(array)[1])


def array_kernel(array: galois.FieldArray) -> galois.FieldArray:
    """Basis of the right kernel, one vector per row.

    Each basis vector is 1 on its own free column and 0 on the other free
    columns, so the basis is canonical.
    """
    gf = type(array)
    cols = array.shape[1]
    reduced, pivots = rref(array)
    free = [c for c in range(cols) if c not in pivots]
    basis = gf.Zeros((len(free), cols))
    for b, f in enumerate(free):
        basis[b, f] = 1
        for r, pivot in enumerate(pivots):
            basis[b, pivot] = -reduced[r, f]
    return basis


def array_solve(
    array: galois.FieldArray, rhs: galois.FieldArray
) -> Optional[galois.FieldArray]:
    """Solve ``array @ x = rhs`` with free variables set to zero, or None."""
    gf = type(array)
    rows, cols = array.shape
    if rhs.shape != (rows,):
        raise DimensionError("right-hand side", rows, rhs.shape[0] if rhs.ndim else 0)
    if rows == 0:
        return gf.Zeros(cols)
    augmented = np.hstack([array, rhs.reshape(rows, 1)])
    reduced, pivots = rref(augmented, ncols=cols)
    for r in range(len(pivots), rows):
        if reduced[r, cols] != 0:
            return None
    solution = gf.Zeros(cols)
    for r, pivot in enumerate(pivots):
        solution[pivot] = reduced[r, cols]
    return solution


class MatrixGF:
    """An immutable dense matrix over a finite field."""

    __slots__ = ("spec", "_array")

    def __init__(self, spec: FieldSpec, values: object) -> None:
        array = values if isinstance(values, galois.FieldArray) else spec.array(values)
        if type(array) is not spec.gf:
            raise FieldError(f"Matrix entries do not belong to {spec}")
        if array.ndim != 2:
            raise DimensionError("matrix", "2 dimensions", array.ndim)
        array = array.copy()
        array.flags.writeable = False
        self.spec = spec
        self._array = array

    @classmethod
    def from_rows(
        cls,
        spec: FieldSpec,
        rows: Sequence[Sequence[int]],
        cols: Optional[int] = None,
    ) -> "MatrixGF":
        if not rows:
            return cls(spec, spec.zeros((0, cols or 0)))
        return cls(spec, [list(r) for r in rows])

    @property
    def rows(self) -> int:
        return int(self._array.shape[0])

    @property
    def cols(self) -> int:
        return int(self._array.shape[1])

    @property
    def entries(self) -> Vector:
        """Row-major integer entries."""
        return to_vector(self._array)

    @property
    def array(self) -> galois.FieldArray:
        """Read-only view of the underlying field array."""
        return self._array

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.spec, self._array.T)

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in to_rows(self._array)]

    def __matmul__(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionError("vector", self.cols, len(vector))
        return to_vector(self._array @ self.spec.array(list(vector)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return (
            self.spec == other.spec
            and self._array.shape == other._array.shape
            and bool(np.array_equal(self._array, other._array))
        )

    def __hash__(self) -> int:
        return hash((self.spec, self._array.shape, self.entries))

    def __repr__(self) -> str:
        return f"MatrixGF({self.spec}, {self.to_lists()})"


def rank(matrix: MatrixGF) -> int:
    """Row rank via Gaussian elimination."""
    return array_rank(matrix.array)


def kernel_basis(matrix: MatrixGF) -> List[Vector]:
    """Basis of ``{x : M x = 0}``, canonicalised by free coordinates equal to 1."""
    basis = array_kernel(matrix.array)
    vectors = to_rows(basis)
    for v in basis:
        if np.any(np.asarray(matrix.array @ v) != 0):
            raise FieldError("Kernel vector failed verification")
    return vectors


def solve(matrix: MatrixGF, rhs: Sequence[int]) -> Optional[Vector]:
    """Solve ``M x = b``.

    Returns:
        The solution with free variables zeroed, or None when the system is
        inconsistent

    Raises:
        DimensionError: If ``len(b)`` differs from the number of rows
    """
    if len(rhs) != matrix.rows:
        raise DimensionError("right-hand side", matrix.rows, len(rhs))
    solution = array_solve(matrix.array, matrix.spec.array(list(rhs)))
    return None if solution is None else to_vector(solution)
