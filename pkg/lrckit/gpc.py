"""Generalized pyramid codes.

A systematic code is described by its support graph G([k], [h], E) and parity
points c_1..c_h in F_q^k with Supp(c_j) = N(j). The code corrects every
erasure pattern satisfying Hall's condition exactly when the points are in
general position: every square sub-matrix C_{I,J} that admits a perfect
matching in G is invertible. This module samples such codes, checks the
equivalence, and exposes the elimination theory that pins parity localities
to parity degrees.
"""

import logging
from itertools import combinations
from math import comb
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np
from networkx.algorithms import bipartite
from pydantic import ValidationError

from .code_model import (
    LinearCode,
    certify_locality,
    encode,
    enumerate_messages,
    field_for_order,
    support_graph_of,
)
from .config import DEFAULT_BUDGETS, Budgets
from .constructions import Word, check_word
from .exceptions import (
    DimensionError,
    IntegrityError,
    MalformedInputError,
    ParameterError,
    SamplingFailedError,
)
from .field_algebra import FieldSpec, array_kernel, array_rank, array_solve, to_vector
from .limits import BudgetMeter, check_budget, validate_index_set
from .models import (
    DecodeOutcome,
    EliminationBoundReport,
    EliminationResult,
    ErasurePattern,
    GpcLocalityReport,
    HallSweepReport,
    IndexSet,
    SupportClosureReport,
    SupportEnumerationReport,
    SupportGraph,
)
from .utils import subsets_by_size, support, unit_vector

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

MAX_ELIMINATION_PARITIES = 12
_CHUNK = 4096

CLOSURE_COUNTEREXAMPLE = (
    "union closure needs q >= n; over GF(2) the length-3 parity check code has "
    "supports {}, {0,1}, {0,2}, {1,2} and {0,1} | {0,2} is not among them"
)


class GpcCode:
    """Parity points with supports matching a support graph."""

    def __init__(
        self,
        field: FieldSpec,
        graph: SupportGraph,
        points: Sequence[Sequence[int]],
        seed: Optional[int] = None,
        general_position: Optional[bool] = None,
        verification: Optional[str] = None,
    ) -> None:
        """Create a code from its graph and parity points.

        Args:
            field: Alphabet
            graph: Support graph G([k], [h], E)
            points: c_1..c_h, each of length k
            seed: Seed that produced the points, if sampled
            general_position: Verified general-position flag, None if unchecked
            verification: How general position was verified

        Raises:
            MalformedInputError: If some Supp(c_j) differs from N(j)
        """
        if len(points) != graph.h:
            raise MalformedInputError(
                f"Graph has {graph.h} parities, got {len(points)} points"
            )
        rows = []
        for j, c in enumerate(points):
            if len(c) != graph.k:
                raise DimensionError(f"point {j}", graph.k, len(c))
            row = tuple(int(v) for v in c)
            if support(row) != graph.gamma(j):
                raise MalformedInputError(
                    f"Support of point {j} does not match the graph",
                    f"neighbours of parity {j} = {list(graph.gamma(j))}, "
                    f"support = {list(support(row))}",
                )
            rows.append(row)

        self.field = field
        self.graph = graph
        self.points: Tuple[Vector, ...] = tuple(rows)
        self.seed = seed
        self.general_position = general_position
        self.verification = verification
        if rows:
            matrix = field.array([list(row) for row in rows]).T.copy()
        else:
            matrix = field.zeros((graph.k, 0))
        matrix.flags.writeable = False
        self._matrix = matrix
        self._linear: Optional[LinearCode] = None

    @classmethod
    def from_linear_code(cls, code: LinearCode) -> "GpcCode":
        """Read the graph and points off any systematic code.

        Raises:
            ParameterError: If the code is not systematic or has a zero parity column
        """
        graph, _, parities = support_graph_of(code)
        seed = code.metadata.get("seed")
        return cls(code.field, graph, [code.points[p] for p in parities], seed=seed)

    @property
    def k(self) -> int:
        return self.graph.k

    @property
    def h(self) -> int:
        return self.graph.h

    @property
    def n(self) -> int:
        return self.graph.k + self.graph.h

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def matrix(self) -> galois.FieldArray:
        """C, the k x h matrix whose column j is c_j (read-only)."""
        return self._matrix

    def submatrix(
        self, info: Sequence[int], parities: Sequence[int]
    ) -> galois.FieldArray:
        """C_{I,J}."""
        if not info or not parities:
            return self.field.zeros((len(info), len(parities)))
        return self._matrix[np.ix_(list(info), list(parities))]

    @property
    def linear_code(self) -> LinearCode:
        """The systematic [k + h, k] code: unit columns first, then c_1..c_h."""
        if self._linear is None:
            units = [unit_vector(self.k, i) for i in range(self.k)]
            metadata: Dict[str, Any] = {
                "construction": "gpc",
                "params": {"q": self.q},
                "graph": self.graph.describe(),
            }
            if self.seed is not None:
                metadata["seed"] = self.seed
            self._linear = LinearCode(
                self.field,
                units + list(self.points),
                systematic_info=range(self.k),
                metadata=metadata,
            )
        return self._linear

    def verified(self, general_position: bool, verification: str) -> "GpcCode":
        return GpcCode(
            self.field,
            self.graph,
            self.points,
            self.seed,
            general_position,
            verification,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GpcCode):
            return NotImplemented
        mine = (self.field, self.graph, self.points)
        return mine == (other.field, other.graph, other.points)

    def __hash__(self) -> int:
        return hash((self.field, self.graph, self.points))

    def __repr__(self) -> str:
        graph = self.graph.describe()
        return f"GpcCode(k={self.k}, h={self.h}, graph='{graph}', {self.field})"


def support_graph_from_spec(text: str, k: Optional[int] = None) -> SupportGraph:
    """Parse ``"0,1;2,3;0,1,2,3"``: one neighbourhood per parity.

    Args:
        text: Semicolon-separated neighbourhoods of 0-based information indices
        k: Number of information vertices, by default one past the largest index

    Raises:
        ParameterError: On empty neighbourhoods, bad integers or indices >= k
    """
    parts = [part.strip() for part in text.strip().split(";")]
    if not text.strip() or any(not part for part in parts):
        raise ParameterError(f"Graph '{text}' has an empty neighbourhood")
    try:
        raw = [[int(tok) for tok in part.split(",")] for part in parts]
    except ValueError as e:
        raise ParameterError(f"Graph '{text}' is not a list of integer sets", str(e))
    largest = max(max(items) for items in raw)
    k = largest + 1 if k is None else k
    neighborhoods = tuple(
        validate_index_set(f"N({j})", items, k) for j, items in enumerate(raw)
    )
    try:
        return SupportGraph(k=k, h=len(neighborhoods), neighborhoods=neighborhoods)
    except ValidationError as e:
        raise ParameterError(f"Invalid support graph '{text}'", str(e))


# ---------------------------------------------------------------------------
# Matchings and Hall's condition


def max_matching(
    graph: SupportGraph,
    left: Optional[Sequence[int]] = None,
    right: Optional[Sequence[int]] = None,
) -> Dict[int, int]:
    """Maximum matching between information vertices ``left`` and parities ``right``.

    Returns:
        Matched information vertex -> parity, sorted by information vertex
    """
    left = tuple(range(graph.k)) if left is None else tuple(left)
    right = tuple(range(graph.h)) if right is None else tuple(right)
    if not left or not right:
        return {}
    view = graph.to_networkx().subgraph(
        [("i", i) for i in left] + [("p", j) for j in right]
    )
    top = [("i", i) for i in left]
    matching = bipartite.hopcroft_karp_matching(view, top_nodes=top)
    pairs = {node[1]: mate[1] for node, mate in matching.items() if node[0] == "i"}
    return dict(sorted(pairs.items()))


def _check_pattern(graph: SupportGraph, pattern: ErasurePattern) -> None:
    validate_index_set("erased information", pattern.erased_info, graph.k)
    validate_index_set("erased parities", pattern.erased_parities, graph.h)


def hall_condition(graph: SupportGraph, pattern: ErasurePattern) -> bool:
    """True iff the erased information symbols match into the surviving parities."""
    _check_pattern(graph, pattern)
    erased = set(pattern.erased_parities)
    surviving = [j for j in range(graph.h) if j not in erased]
    matching = max_matching(graph, pattern.erased_info, surviving)
    return len(matching) == len(pattern.erased_info)


def strict_hall(graph: SupportGraph, info: IndexSet, parities: IndexSet) -> bool:
    """|N_J(I')| > |I'| for every nonempty I' of I."""
    return all(
        len(graph.parity_neighbors(sub, parities)) > len(sub)
        for sub in subsets_by_size(info, len(info), min_size=1)
    )


# ---------------------------------------------------------------------------
# General position and sampling


def _square_pairs(graph: SupportGraph) -> int:
    return sum(
        comb(graph.k, s) * comb(graph.h, s)
        for s in range(1, min(graph.k, graph.h) + 1)
    )


def general_position_violation(
    code: GpcCode, budgets: Budgets = DEFAULT_BUDGETS
) -> Optional[Tuple[IndexSet, IndexSet]]:
    """First matchable square (I, J) whose sub-matrix C_{I,J} is singular, or None.

    Raises:
        BudgetExceededError: If the equal-size pairs exceed their budget
    """
    graph = code.graph
    check_budget(
        "general_position_pairs", _square_pairs(graph), budgets.general_position_pairs
    )
    for size in range(1, min(graph.k, graph.h) + 1):
        for info in combinations(range(graph.k), size):
            for parities in combinations(range(graph.h), size):
                if len(max_matching(graph, info, parities)) < size:
                    continue
                if array_rank(code.submatrix(info, parities)) < size:
                    return info, parities
    return None


def is_general_position(code: GpcCode, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """True iff every matchable square sub-matrix of C is invertible."""
    violation = general_position_violation(code, budgets)
    if violation is not None:
        logger.debug(f"{code} is not in general position: C_{violation} is singular")
    return violation is None


def sample_gpc(
    graph: SupportGraph, q: int, seed: int = 0, budgets: Budgets = DEFAULT_BUDGETS
) -> GpcCode:
    """Sample points with supports matching G until they are in general position.

    Each c_j is uniform over vectors that are nonzero exactly on N(j).
    Seeds seed, seed + 1, ... are tried in turn.

    Raises:
        ParameterError: If q is not a prime power
        SamplingFailedError: When no seed within the retry limit verifies
    """
    field = field_for_order(q)
    gf = field.gf
    for attempt in range(budgets.sampling_retries):
        current = seed + attempt
        rng = np.random.default_rng(current)
        points = []
        for j in range(graph.h):
            point = gf.Zeros(graph.k)
            point[list(graph.gamma(j))] = gf.Random(graph.degree(j), low=1, seed=rng)
            points.append(to_vector(point))
        code = GpcCode(field, graph, points, seed=current)
        if is_general_position(code, budgets):
            logger.info(
                f"GPC on '{graph.describe()}' over {field} accepted seed {current}"
            )
            return code.verified(True, "exhaustive")
        logger.debug(f"Seed {current} rejected for graph '{graph.describe()}'")

    logger.warning(
        f"No general-position GPC in {budgets.sampling_retries} seeds from {seed}"
    )
    raise SamplingFailedError("sample_gpc", seed, budgets.sampling_retries)


# ---------------------------------------------------------------------------
# Erasure correction


def correct_erasures(code: GpcCode, word: Word) -> DecodeOutcome:
    """Recover erased symbols of a word ``(x_1..x_k, p_1..p_h)``.

    The surviving parities give one equation each in the erased information
    symbols; once those are solved, erased parities are re-encoded.

    Args:
        code: The generalized pyramid code
        word: Symbols with None at erased positions

    Returns:
        The outcome; an underdetermined system is reported, not raised

    Raises:
        IntegrityError: If the unerased symbols belong to no codeword
    """
    erased = check_word(word, code.n, code.q)
    gf = code.field.gf
    lost_info = [i for i in erased if i < code.k]
    known_info = [i for i in range(code.k) if word[i] is not None]
    surviving = [j for j in range(code.h) if word[code.k + j] is not None]
    steps: List[str] = []

    message = gf.Zeros(code.k)
    for i in known_info:
        message[i] = word[i]

    if lost_info:
        system = code.submatrix(lost_info, surviving).T
        if array_rank(system) < len(lost_info):
            return DecodeOutcome(
                success=False,
                erased=erased,
                reason=(
                    f"information symbols {lost_info} are underdetermined by "
                    f"the surviving parities {surviving}"
                ),
            )
        observed = gf([word[code.k + j] for j in surviving])
        known_part = (
            code.submatrix(known_info, surviving).T @ message[known_info]
            if known_info
            else gf.Zeros(len(surviving))
        )
        solution = array_solve(system, observed - known_part)
        if solution is None:
            raise IntegrityError(
                "Surviving parities contradict every codeword",
                [code.k + j for j in surviving],
            )
        message[lost_info] = solution
        steps.append(
            f"solved {len(lost_info)} information symbols "
            f"from {len(surviving)} parities"
        )

    codeword = encode(code.linear_code, to_vector(message))
    bad = [i for i, v in enumerate(word) if v is not None and v != codeword[i]]
    if bad:
        raise IntegrityError(
            "Unerased symbols are inconsistent with every codeword", bad
        )
    lost_parities = [i for i in erased if i >= code.k]
    if lost_parities:
        steps.append(f"re-encoded parities {[i - code.k for i in lost_parities]}")
    return DecodeOutcome(
        success=True, codeword=codeword, erased=erased, steps=tuple(steps)
    )


def hall_equivalence_sweep(
    code: GpcCode, seed: int = 0, budgets: Budgets = DEFAULT_BUDGETS
) -> HallSweepReport:
    """Compare decoder success with Hall's condition on all 2^(k+h) erasure patterns.

    A seeded random codeword is erased in every pattern.

    Raises:
        BudgetExceededError: If 2^(k+h) exceeds the erasure pattern budget
    """
    check_budget("erasure_patterns", 2**code.n, budgets.erasure_patterns)
    rng = np.random.default_rng(seed)
    message = to_vector(code.field.gf.Random(code.k, seed=rng))
    codeword = encode(code.linear_code, message)

    patterns = hall_holds = decodable = 0
    mismatches: List[ErasurePattern] = []
    for size in range(code.n + 1):
        for positions in combinations(range(code.n), size):
            pattern = ErasurePattern(
                erased_info=tuple(p for p in positions if p < code.k),
                erased_parities=tuple(p - code.k for p in positions if p >= code.k),
            )
            word = [None if i in positions else v for i, v in enumerate(codeword)]
            outcome = correct_erasures(code, word)
            hall = hall_condition(code.graph, pattern)
            success = outcome.success and outcome.codeword == codeword
            patterns += 1
            hall_holds += int(hall)
            decodable += int(success)
            if success != hall:
                mismatches.append(pattern)

    if mismatches:
        logger.warning(
            f"{len(mismatches)} erasure patterns disagree with Hall's condition"
        )
    return HallSweepReport(
        patterns=patterns,
        hall_holds=hall_holds,
        decodable=decodable,
        mismatches=tuple(mismatches),
    )


# ---------------------------------------------------------------------------
# Elimination


def _projective_points(field: FieldSpec, dim: int) -> Iterator[galois.FieldArray]:
    """Every nonzero vector of F_q^dim whose first nonzero entry is 1, in chunks."""
    q = field.order
    for lead in range(dim):
        tail = dim - lead - 1
        total = q**tail
        for start in range(0, total, _CHUNK):
            stop = min(start + _CHUNK, total)
            rows = np.zeros((stop - start, dim), dtype=np.int64)
            rows[:, lead] = 1
            rows[:, lead + 1 :] = enumerate_messages(q, tail, start, stop)
            yield field.gf(rows)


def _first_witness(
    candidates: galois.FieldArray,
    kernel: galois.FieldArray,
    columns: galois.FieldArray,
    kept: List[int],
) -> Optional[galois.FieldArray]:
    mus = candidates @ kernel
    combos = mus @ columns.T
    ok = np.all(np.asarray(mus) != 0, axis=1)
    if kept:
        ok &= np.all(np.asarray(combos[:, kept]) != 0, axis=1)
    hits = np.flatnonzero(ok)
    return mus[hits[0]] if hits.size else None


def can_eliminate(
    code: GpcCode,
    info: Sequence[int],
    parities: Sequence[int],
    budgets: Budgets = DEFAULT_BUDGETS,
    seed: int = 0,
) -> EliminationResult:
    """Search for mu_j != 0 with Supp(sum mu_j c_j) = N(J) minus I.

    The coefficients that zero I form the kernel of C_{I,J}. Its projective
    points are enumerated when there are few enough, otherwise random points
    are drawn. The strict Hall condition is evaluated exactly alongside.

    Args:
        code: The generalized pyramid code
        info: I, a subset of the union of N(j) over J
        parities: J, nonempty
        budgets: Enumeration limits
        seed: Seed for the random search

    Raises:
        ParameterError: If J is empty or too large, or I leaves N(J)
    """
    parities = validate_index_set("J", parities, code.h)
    info = validate_index_set("I", info, code.k)
    if not parities:
        raise ParameterError("J must be nonempty")
    if len(parities) > MAX_ELIMINATION_PARITIES:
        raise ParameterError(
            f"|J| = {len(parities)} exceeds {MAX_ELIMINATION_PARITIES}"
        )
    union = code.graph.gamma_union(parities)
    outside = sorted(set(info).difference(union))
    if outside:
        raise ParameterError(f"I contains {outside}, which no parity of J covers")

    necessary = strict_hall(code.graph, info, parities)
    kept = [i for i in union if i not in set(info)]
    columns = code.matrix[:, list(parities)]
    gf = code.field.gf
    if info:
        kernel = array_kernel(code.submatrix(info, parities))
    else:
        kernel = gf.Identity(len(parities))
    dim = kernel.shape[0]

    def result(witness: Optional[galois.FieldArray], method: str) -> EliminationResult:
        return EliminationResult(
            info=info,
            parities=parities,
            possible=witness is not None,
            witness=None if witness is None else to_vector(witness),
            resulting_support=None if witness is None else tuple(kept),
            necessary_condition=necessary,
            method=method,
        )

    if dim == 0:
        return result(None, "trivial-kernel")

    q = code.q
    projective = (q**dim - 1) // (q - 1)
    if projective <= budgets.elimination_enumeration:
        for candidates in _projective_points(code.field, dim):
            witness = _first_witness(candidates, kernel, columns, kept)
            if witness is not None:
                return result(witness, "exhaustive")
        return result(None, "exhaustive")

    rng = np.random.default_rng(seed)
    candidates = gf.Random((budgets.elimination_random_tries, dim), seed=rng)
    return result(_first_witness(candidates, kernel, columns, kept), "random")


def check_elimination_bound(
    code: GpcCode, budgets: Budgets = DEFAULT_BUDGETS, seed: int = 0
) -> EliminationBoundReport:
    """Try every (I, J) and confirm each witnessed elimination has |I| <= |J| - 1
    and satisfies the strict Hall condition.

    Raises:
        BudgetExceededError: If the (I, J) pairs exceed their budget
    """
    graph = code.graph
    queries = [
        (parities, graph.gamma_union(parities))
        for size in range(1, graph.h + 1)
        for parities in combinations(range(graph.h), size)
    ]
    check_budget(
        "general_position_pairs",
        sum(2 ** len(union) for _, union in queries),
        budgets.general_position_pairs,
    )
    general = is_general_position(code, budgets)

    checked = witnessed = 0
    bound: List[Tuple[IndexSet, IndexSet]] = []
    necessity: List[Tuple[IndexSet, IndexSet]] = []
    for parities, union in queries:
        for info in subsets_by_size(union, len(union)):
            result = can_eliminate(code, info, parities, budgets, seed)
            checked += 1
            if not result.possible:
                continue
            witnessed += 1
            if len(info) > len(parities) - 1:
                bound.append((info, parities))
            if not result.necessary_condition:
                necessity.append((info, parities))

    if (bound or necessity) and general:
        logger.warning(
            f"{code} is in general position but violates the elimination bound"
        )
    return EliminationBoundReport(
        general_position=general,
        pairs_checked=checked,
        witnessed=witnessed,
        bound_violations=tuple(bound),
        necessity_violations=tuple(necessity),
    )


# ---------------------------------------------------------------------------
# Locality and supports


def gpc_locality(
    code: GpcCode, budgets: Budgets = DEFAULT_BUDGETS
) -> GpcLocalityReport:
    """Locality of every parity symbol next to its degree in G."""
    linear = code.linear_code
    meter = BudgetMeter("locality_rank_checks", budgets.locality_rank_checks)
    degrees = tuple(code.graph.degree(j) for j in range(code.h))
    localities = tuple(
        certify_locality(linear, code.k + j, budgets, meter).locality
        for j in range(code.h)
    )
    general = (
        code.general_position
        if code.general_position is not None
        else is_general_position(code, budgets)
    )
    return GpcLocalityReport(
        general_position=general,
        degrees=degrees,
        localities=localities,
        mismatches=tuple(j for j in range(code.h) if localities[j] != degrees[j]),
    )


def _ordered(supports: Sequence[IndexSet]) -> Tuple[IndexSet, ...]:
    return tuple(sorted(set(supports), key=lambda s: (len(s), s)))


def _span_supports(field: FieldSpec, basis: galois.FieldArray) -> Tuple[IndexSet, ...]:
    found = set()
    dim = basis.shape[0]
    total = field.order**dim
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        vectors = field.gf(enumerate_messages(field.order, dim, start, stop)) @ basis
        for row in np.asarray(vectors) != 0:
            found.add(tuple(int(i) for i in np.flatnonzero(row)))
    return _ordered(list(found))


def support_closure_check(
    points: Sequence[Sequence[int]],
    q: int,
    n: Optional[int] = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> SupportClosureReport:
    """Enumerate the supports of span(points) and test closure under union.

    Closure is guaranteed only when q >= n; below that the report is marked
    not applicable but the enumeration still runs.

    Raises:
        BudgetExceededError: If q^dim exceeds the span budget
        DimensionError: If a point does not have length n
    """
    field = field_for_order(q)
    if n is None:
        if not points:
            raise ParameterError("Need n when no points are given")
        n = len(points[0])
    for j, p in enumerate(points):
        if len(p) != n:
            raise DimensionError(f"point {j}", n, len(p))
    matrix = field.array([list(p) for p in points]) if points else field.zeros((0, n))
    dim = array_rank(matrix) if points else 0
    check_budget("span_vectors", q**dim, budgets.span_vectors)
    basis = matrix.row_reduce()[:dim] if dim else field.zeros((0, n))

    supports = _span_supports(field, basis)
    present = set(supports)
    counterexample = next(
        (
            (a, b)
            for a, b in combinations(supports, 2)
            if tuple(sorted(set(a).union(b))) not in present
        ),
        None,
    )
    applicable = q >= n
    if counterexample is not None and applicable:
        logger.warning(
            f"Supports over GF({q}) not closed under union: {counterexample}"
        )
    return SupportClosureReport(
        applicable=applicable,
        q=q,
        n=n,
        supports=supports,
        closed=counterexample is None,
        counterexample=counterexample,
        note=None if applicable else CLOSURE_COUNTEREXAMPLE,
    )


def combinatorial_supports(
    graph: SupportGraph, budgets: Budgets = DEFAULT_BUDGETS
) -> Tuple[IndexSet, ...]:
    """Every N(J) minus I with I passing the strict Hall condition for J."""
    queries = [
        (parities, graph.gamma_union(parities))
        for size in range(graph.h + 1)
        for parities in combinations(range(graph.h), size)
    ]
    check_budget(
        "general_position_pairs",
        sum(2 ** len(union) for _, union in queries),
        budgets.general_position_pairs,
    )
    found = []
    for parities, union in queries:
        for info in subsets_by_size(union, len(union)):
            if strict_hall(graph, info, parities):
                found.append(tuple(i for i in union if i not in set(info)))
    return _ordered(found)


def enumerate_supports(
    code: GpcCode, budgets: Budgets = DEFAULT_BUDGETS
) -> SupportEnumerationReport:
    """Supp(span{c_j}) by brute force and by the graph characterization.

    The two agree when q >= n and the points are in general position;
    otherwise the report is marked not applicable.

    Raises:
        BudgetExceededError: If q^h exceeds the span budget
    """
    check_budget("span_vectors", code.q**code.h, budgets.span_vectors)
    if code.points:
        points = code.field.array([list(c) for c in code.points])
    else:
        points = code.field.zeros((0, code.k))
    brute = _span_supports(code.field, points)
    combinatorial = combinatorial_supports(code.graph, budgets)
    general = (
        code.general_position
        if code.general_position is not None
        else is_general_position(code, budgets)
    )
    applicable = code.q >= code.n and general
    note = None
    if not applicable:
        note = "needs q >= n and points in general position"
    agree = brute == combinatorial
    if applicable and not agree:
        logger.warning(f"Support characterization fails for {code}")
    return SupportEnumerationReport(
        applicable=applicable,
        general_position=general,
        brute_force=brute,
        combinatorial=combinatorial,
        agree=agree,
        note=note,
    )
