"""Linear codes as point sets: encoding, distance, locality and recovery hypergraphs.

A code is stored as its ordered columns c_1..c_n in F_q^k. Coordinate i of the
encoding of x is c_i . x, so every question about the code becomes a question
about ranks of column subsets.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from .config import DEFAULT_BUDGETS, Budgets
from .exceptions import BudgetExceededError, DimensionError, ParameterError
from .field_algebra import (
    FieldSpec,
    MatrixGF,
    array_kernel,
    array_rank,
    array_solve,
    kernel_basis,
    make_field,
    to_vector,
)
from .limits import BudgetMeter, check_budget, subsets_up_to, validate_prime_power
from .models import (
    HyperEdge,
    LocalityCertificate,
    LocalityProfile,
    RecoveryHypergraph,
    SupportGraph,
)
from .utils import Locality, support, unit_vector

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

# Message spaces up to this size are enumerated rather than rank-searched.
ENUMERATION_PREFERRED = 2**16
_CHUNK = 4096


def field_for_order(q: int) -> FieldSpec:
    """The canonical field of order q.

    Raises:
        ParameterError: If q is not a prime power
    """
    p, m = validate_prime_power(q)
    return make_field(p, m)


class LinearCode:
    """An [n, k] code over GF(q) given by its generator columns."""

    def __init__(
        self,
        field: FieldSpec,
        points: Sequence[Sequence[int]],
        systematic_info: Optional[Sequence[int]] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Create a code from its columns.

        Args:
            field: Alphabet
            points: Columns c_1..c_n, each of length k
            systematic_info: Positions of the k unit columns, in order
            metadata: Free-form construction details carried into code files

        Raises:
            ParameterError: If the columns do not span F_q^k
            DimensionError: If columns have different lengths
        """
        if not points:
            raise ParameterError("A code needs at least one column")
        k = len(points[0])
        if k < 1:
            raise ParameterError("Columns must have length k >= 1")
        for j, c in enumerate(points):
            if len(c) != k:
                raise DimensionError(f"column {j}", k, len(c))

        self.field = field
        self.points: Tuple[Vector, ...] = tuple(
            tuple(int(v) for v in c) for c in points
        )
        self.k = k
        self.n = len(self.points)
        generator = field.array([list(c) for c in self.points]).T.copy()
        generator.flags.writeable = False
        self._generator = generator
        self._ranks: Dict[Tuple[int, ...], int] = {}
        self._distance: Optional[int] = None
        self.metadata: Dict[str, Any] = dict(metadata or {})

        spanned = self.rank_of(tuple(range(self.n)))
        if self.n < k or spanned != k:
            raise ParameterError(
                f"Columns span a space of dimension {spanned}, expected k = {k}"
            )

        self.systematic_info: Optional[Tuple[int, ...]] = None
        if systematic_info is not None:
            info = tuple(systematic_info)
            if len(info) != k:
                raise ParameterError(
                    f"systematic_info needs {k} positions, got {len(info)}"
                )
            for i, pos in enumerate(info):
                if not 0 <= pos < self.n or self.points[pos] != unit_vector(k, i):
                    raise ParameterError(f"Column {pos} is not the unit vector e_{i}")
            self.systematic_info = info

    @property
    def generator(self) -> galois.FieldArray:
        """The k x n generator matrix (read-only)."""
        return self._generator

    @property
    def q(self) -> int:
        return self.field.order

    def columns(self, indices: Sequence[int]) -> galois.FieldArray:
        return self._generator[:, list(indices)]

    def rank_of(self, indices: Sequence[int]) -> int:
        """Rank of the column subset, cached per index tuple."""
        key = tuple(indices)
        cached = self._ranks.get(key)
        if cached is None:
            cached = array_rank(self.columns(key)) if key else 0
            self._ranks[key] = cached
        return cached

    def unit_positions(self) -> Optional[Tuple[int, ...]]:
        """Positions of e_1..e_k, from systematic_info or the first matching columns."""
        if self.systematic_info is not None:
            return self.systematic_info
        positions = []
        for i in range(self.k):
            e = unit_vector(self.k, i)
            found = next((j for j, c in enumerate(self.points) if c == e), None)
            if found is None:
                return None
            positions.append(found)
        return tuple(positions)

    def missing_units(self) -> List[int]:
        return [
            i for i in range(self.k) if unit_vector(self.k, i) not in self.points
        ]

    def with_metadata(self, **updates: Any) -> "LinearCode":
        merged = {**self.metadata, **updates}
        return LinearCode(self.field, self.points, self.systematic_info, merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field == other.field and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.field, self.points))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"


def encode(code: LinearCode, message: Sequence[int]) -> Vector:
    """Codeword whose coordinate i is c_i . x.

    Raises:
        DimensionError: If the message length differs from k
    """
    if len(message) != code.k:
        raise DimensionError("message", code.k, len(message))
    x = code.field.array(list(message))
    return to_vector(x @ code.generator)


# ---------------------------------------------------------------------------
# Minimum distance


def distance_by_subset_rank(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS
) -> int:
    """d = n - max{|S| : rank(S) <= k - 1}, searched as the smallest erasure set T
    whose complement loses rank."""
    check_budget("distance_subsets", 2**code.n, budgets.distance_subsets)
    everything = set(range(code.n))
    for size in range(1, code.n + 1):
        for erased in combinations(range(code.n), size):
            kept = tuple(sorted(everything.difference(erased)))
            if code.rank_of(kept) < code.k:
                return size
    raise AssertionError("the empty column set always has rank < k")


def enumerate_messages(q: int, k: int, start: int, stop: int) -> np.ndarray:
    """Messages start..stop-1 of F_q^k as base-q digit rows, low digit first."""
    index = np.arange(start, stop, dtype=np.int64)[:, None]
    powers = q ** np.arange(k, dtype=np.int64)
    return (index // powers) % q


def _codeword_weights(code: LinearCode, budgets: Budgets) -> Iterator[np.ndarray]:
    total = code.q**code.k
    check_budget("distance_codewords", total, budgets.distance_codewords)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        messages = enumerate_messages(code.q, code.k, start, stop)
        words = code.field.gf(messages) @ code.generator
        yield np.count_nonzero(np.asarray(words), axis=1)


def distance_by_enumeration(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS
) -> int:
    """Minimum Hamming weight over all nonzero codewords."""
    best = code.n
    for chunk, weights in enumerate(_codeword_weights(code, budgets)):
        if chunk == 0:
            weights = weights[1:]
        if weights.size:
            best = min(best, int(weights.min()))
    return best


def weight_distribution(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS
) -> List[int]:
    """Number of codewords of each weight 0..n."""
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for weights in _codeword_weights(code, budgets):
        counts += np.bincount(weights, minlength=code.n + 1)
    return [int(c) for c in counts]


def min_distance(
    code: LinearCode, method: str = "auto", budgets: Budgets = DEFAULT_BUDGETS
) -> int:
    """Exact minimum distance.

    Args:
        code: Code to measure
        method: ``subset-rank``, ``enumeration`` or ``auto`` (whichever fits its budget,
            enumeration first for small message spaces)
        budgets: Enumeration limits

    Raises:
        BudgetExceededError: If neither method fits
        ParameterError: On an unknown method
    """
    if method == "subset-rank":
        return distance_by_subset_rank(code, budgets)
    if method == "enumeration":
        return distance_by_enumeration(code, budgets)
    if method != "auto":
        raise ParameterError(f"Unknown distance method '{method}'")

    if code._distance is not None:
        return code._distance
    codewords = code.q**code.k
    subsets = 2**code.n
    if codewords <= min(ENUMERATION_PREFERRED, budgets.distance_codewords):
        d = distance_by_enumeration(code, budgets)
    elif subsets <= budgets.distance_subsets:
        d = distance_by_subset_rank(code, budgets)
    elif codewords <= budgets.distance_codewords:
        d = distance_by_enumeration(code, budgets)
    else:
        raise BudgetExceededError(
            "distance",
            min(codewords, subsets),
            max(budgets.distance_codewords, budgets.distance_subsets),
        )
    code._distance = d
    return d


def distance_checks(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS
) -> Dict[str, int]:
    """Distance by every method that fits its budget."""
    results: Dict[str, int] = {}
    if 2**code.n <= budgets.distance_subsets:
        results["subset-rank"] = distance_by_subset_rank(code, budgets)
    if code.q**code.k <= budgets.distance_codewords:
        results["enumeration"] = distance_by_enumeration(code, budgets)
    return results


# ---------------------------------------------------------------------------
# Locality


def certify_locality(
    code: LinearCode,
    i: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    meter: Optional[BudgetMeter] = None,
    candidates: Optional[Sequence[int]] = None,
) -> LocalityCertificate:
    """Smallest repair set for coordinate i, with its coefficients.

    Subsets are tried by increasing size and lexicographically within a size,
    so the returned set is the lexicographically least minimal one. A zero
    column is repaired by the empty set.

    Args:
        code: Code to inspect
        i: Coordinate to repair
        budgets: Enumeration limits
        meter: Shared counter, for profiles spanning several coordinates
        candidates: Coordinates the repair may read; all others by default
    """
    if not 0 <= i < code.n:
        raise ParameterError(f"Coordinate {i} outside [0, {code.n})")
    meter = meter or BudgetMeter("locality_rank_checks", budgets.locality_rank_checks)
    others = (
        tuple(j for j in range(code.n) if j != i)
        if candidates is None
        else tuple(sorted(j for j in candidates if j != i))
    )
    target = code.generator[:, i]

    if not np.any(np.asarray(target) != 0):
        return LocalityCertificate(index=i, locality=0, repair_set=(), coefficients=())
    if code.rank_of(others + (i,)) != code.rank_of(others):
        return LocalityCertificate(index=i, locality=math.inf)

    for size in range(1, len(others) + 1):
        for repair_set in combinations(others, size):
            meter.spend()
            coefficients = array_solve(code.columns(repair_set), target)
            if coefficients is not None:
                return LocalityCertificate(
                    index=i,
                    locality=size,
                    repair_set=repair_set,
                    coefficients=to_vector(coefficients),
                )
    raise AssertionError(f"column {i} is in the span of the others, yet no subset is")


def locality(code: LinearCode, i: int, budgets: Budgets = DEFAULT_BUDGETS) -> Locality:
    """loc(c_i): fewest other coordinates determining coordinate i, or inf."""
    return certify_locality(code, i, budgets).locality


def information_locality_of(
    code: LinearCode, localities: Sequence[Locality]
) -> Locality:
    """Smallest r such that the coordinates of locality <= r have full rank."""
    for r in sorted({v for v in localities if not math.isinf(v)}):
        chosen = tuple(i for i, v in enumerate(localities) if v <= r)
        if code.rank_of(chosen) == code.k:
            return r
    return math.inf


def locality_profile(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS, workers: int = 1
) -> LocalityProfile:
    """Locality of every coordinate plus the information locality.

    Coordinates are searched concurrently when ``workers > 1``; the result
    does not depend on the worker count.

    Raises:
        BudgetExceededError: When the summed rank checks exceed their budget
    """
    meter = BudgetMeter("locality_rank_checks", budgets.locality_rank_checks)

    def one(i: int) -> LocalityCertificate:
        return certify_locality(code, i, budgets, meter)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            certificates = list(pool.map(one, range(code.n)))
    else:
        certificates = [one(i) for i in range(code.n)]

    localities = tuple(c.locality for c in certificates)
    info = information_locality_of(code, localities)
    logger.debug(f"Locality profile of {code}: {localities}, information {info}")
    return LocalityProfile(
        n=code.n,
        k=code.k,
        localities=localities,
        certificates=tuple(certificates),
        information_locality=info,
    )


# ---------------------------------------------------------------------------
# Recovery hypergraph and dual code


def _circuit_coefficients(
    code: LinearCode, indices: Tuple[int, ...]
) -> Optional[Vector]:
    basis = array_kernel(code.columns(indices))
    if basis.shape[0] != 1:
        return None
    vector = to_vector(basis[0])
    if any(v == 0 for v in vector):
        return None
    return vector


def recovery_hypergraph(
    code: LinearCode, r: int, budgets: Budgets = DEFAULT_BUDGETS
) -> RecoveryHypergraph:
    """H_r: every minimal dependency (circuit) among at most r + 1 columns.

    Raises:
        BudgetExceededError: If the subsets to examine exceed their budget
    """
    if r < 0:
        raise ParameterError(f"r must be >= 0, got {r}")
    required = subsets_up_to(code.n, r + 1)
    check_budget("hypergraph_subsets", required, budgets.hypergraph_subsets)
    edges = []
    for size in range(1, min(r + 1, code.n) + 1):
        for indices in combinations(range(code.n), size):
            if code.rank_of(indices) != size - 1:
                continue
            coefficients = _circuit_coefficients(code, indices)
            if coefficients is not None:
                edges.append(HyperEdge(indices=indices, coefficients=coefficients))
    logger.debug(f"H_{r} of {code} has {len(edges)} edges")
    return RecoveryHypergraph(r=r, n=code.n, edges=tuple(edges))


def verify_edge(code: LinearCode, edge: HyperEdge) -> bool:
    """Re-check that an edge's coefficients are nonzero and annihilate its columns."""
    if any(c == 0 for c in edge.coefficients):
        return False
    combo = code.columns(edge.indices) @ code.field.array(list(edge.coefficients))
    return not np.any(np.asarray(combo) != 0)


def has_locality_via_hypergraph(
    code: LinearCode, r: int, budgets: Budgets = DEFAULT_BUDGETS
) -> bool:
    """A code has locality r iff H_r has no isolated vertex."""
    return not recovery_hypergraph(code, r, budgets).isolated


def information_locality_via_hypergraph(
    code: LinearCode, r: int, budgets: Budgets = DEFAULT_BUDGETS
) -> bool:
    """A code has information locality r iff the vertices covered by H_r have rank k."""
    covered = recovery_hypergraph(code, r, budgets).covered
    return code.rank_of(covered) == code.k


def dual_basis(code: LinearCode) -> List[Vector]:
    """Basis of {v : sum v(i) c_i = 0}, of size n - k."""
    return kernel_basis(MatrixGF(code.field, code.generator))


def support_graph_of(
    code: LinearCode,
) -> Tuple[SupportGraph, Tuple[int, ...], Tuple[int, ...]]:
    """Support graph of a systematic code.

    Returns:
        The graph, the information positions and the parity positions (in index
        order, parity j of the graph is the j-th of them)

    Raises:
        ParameterError: If the code has no unit columns or a zero parity column
    """
    info = code.unit_positions()
    if info is None:
        raise ParameterError(
            f"Code is not systematic: no unit columns for {code.missing_units()}"
        )
    parities = tuple(j for j in range(code.n) if j not in set(info))
    neighborhoods = tuple(support(code.points[j]) for j in parities)
    if any(not gamma for gamma in neighborhoods):
        raise ParameterError("A zero parity column has no support")
    graph = SupportGraph(k=code.k, h=len(parities), neighborhoods=neighborhoods)
    return graph, info, parities

