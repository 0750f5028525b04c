"""Redundancy bound, its greedy certificate and structure checks for optimal codes."""

import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple, TypeVar

from .code_model import (
    LinearCode,
    distance_checks,
    locality_profile,
    min_distance,
    recovery_hypergraph,
    weight_distribution,
)
from .config import DEFAULT_BUDGETS, Budgets
from .exceptions import (
    BudgetExceededError,
    IntegrityError,
    NotApplicableError,
    NotSystematicError,
)
from .field_algebra import array_rank
from .limits import validate_positive
from .models import (
    AnalysisReport,
    CanonicalDetection,
    CanonicalPartition,
    ClauseResult,
    GreedyStep,
    GreedyTrace,
    LocalityProfile,
    ParityFloorReport,
    RecoveryHypergraph,
    RowSubcodeGroup,
    RowSubcodeReport,
    StructureReport,
)
from .utils import Locality, ceil_div, support, weight

logger = logging.getLogger(__name__)

T = TypeVar("T")


def redundancy_bound(k: int, r: int, d: int) -> int:
    """ceil(k/r) + d - 2, the least n - k of a code with information locality r."""
    validate_positive("k", k)
    validate_positive("r", r)
    validate_positive("d", d)
    return ceil_div(k, r) + d - 2


def is_optimal(
    code: LinearCode,
    r: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    profile: Optional[LocalityProfile] = None,
) -> bool:
    """Information locality at most r and n - k equal to the redundancy bound."""
    profile = profile or locality_profile(code, budgets)
    if profile.information_locality > r:
        return False
    d = min_distance(code, budgets=budgets)
    return code.n - code.k == redundancy_bound(code.k, r, d)


# ---------------------------------------------------------------------------
# Greedy certificate


def _grow(
    code: LinearCode, chosen: Tuple[int, ...], edge: Tuple[int, ...]
) -> Tuple[Tuple[int, ...], bool]:
    new = tuple(i for i in edge if i not in set(chosen))
    union = tuple(sorted(chosen + new))
    if code.rank_of(union) < code.k:
        return new, False
    # Truncate: take the edge in index order until the rank reaches k - 1.
    taken: List[int] = []
    for i in new:
        taken.append(i)
        if code.rank_of(tuple(sorted(chosen + tuple(taken)))) == code.k - 1:
            break
    return tuple(taken), True


def greedy_certificate(
    code: LinearCode,
    r: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    hypergraph: Optional[RecoveryHypergraph] = None,
) -> GreedyTrace:
    """Run the set-growing algorithm that proves the redundancy bound.

    While rank(S) <= k - 2, an edge T of H_r that leaves S is added to S (or,
    if that would reach rank k, only enough of it to reach rank k - 1). Among
    all such edges the one maximizing s/t is used; ties go to the lowest new
    coordinate, then to the lexicographically least edge.

    Raises:
        NotApplicableError: If the information locality exceeds r
    """
    graph = hypergraph or recovery_hypergraph(code, r, budgets)
    if code.rank_of(graph.covered) < code.k:
        raise NotApplicableError(
            "greedy_certificate", [f"information locality of the code exceeds r = {r}"]
        )

    chosen: Tuple[int, ...] = ()
    steps: List[GreedyStep] = []
    while code.rank_of(chosen) <= code.k - 2:
        best = None
        best_key = None
        before = code.rank_of(chosen)
        for edge in graph.edges:
            fresh = [i for i in edge.indices if i not in set(chosen)]
            if not fresh:
                continue
            added, truncated = _grow(code, chosen, edge.indices)
            s = len(added)
            t = code.rank_of(tuple(sorted(chosen + added))) - before
            ratio = Fraction(s, t) if t else None
            key = (0 if ratio is None else 1, -(ratio or 0), fresh[0], edge.indices)
            if best_key is None or key < best_key:
                best_key = key
                best = GreedyStep(
                    chosen=fresh[0],
                    edge=edge.indices,
                    added=added,
                    truncated=truncated,
                    s=s,
                    t=t,
                )
        if best is None:
            raise NotApplicableError(
                "greedy_certificate", ["no hyperedge leaves the current set"]
            )
        steps.append(best)
        chosen = tuple(sorted(chosen + best.added))

    final_rank = code.rank_of(chosen)
    required = code.k + ceil_div(code.k, r) - 2
    trace = GreedyTrace(
        k=code.k,
        r=r,
        n=code.n,
        steps=tuple(steps),
        final_set=chosen,
        final_rank=final_rank,
        case=2 if any(s.truncated for s in steps) else 1,
        required_size=required,
        distance_ceiling=code.n - len(chosen),
        certified=final_rank == code.k - 1 and len(chosen) >= required,
    )
    logger.debug(
        f"Greedy certificate for {code}: |S| = {len(chosen)}, case {trace.case}"
    )
    return trace


# ---------------------------------------------------------------------------
# Structure of optimal codes


def _unmet_shape(code: LinearCode, r: int, d: int, need_small_d: bool) -> List[str]:
    unmet = []
    if r >= code.k:
        unmet.append(f"r < k fails (r = {r}, k = {code.k})")
    if code.k % r:
        unmet.append(f"r | k fails (r = {r}, k = {code.k})")
    elif code.n != code.k + code.k // r + d - 2:
        unmet.append(f"n = k + k/r + d - 2 fails (n = {code.n}, d = {d})")
    if need_small_d and d >= r + 3:
        unmet.append(f"d < r + 3 fails (d = {d}, r = {r})")
    return unmet


def check_structure(
    code: LinearCode,
    r: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    hypergraph: Optional[RecoveryHypergraph] = None,
) -> StructureReport:
    """Check that H_r of an optimal code has disjoint edges of size r + 1.

    The edge count k/r and the d - 2 isolated vertices are checked only when
    additionally d < r + 3. Unmet preconditions are reported with
    ``applicable=False``; the edges are listed regardless.
    """
    validate_positive("r", r)
    d = min_distance(code, budgets=budgets)
    graph = hypergraph or recovery_hypergraph(code, r, budgets)
    edges = tuple(e.indices for e in graph.edges)

    unmet = _unmet_shape(code, r, d, need_small_d=False)
    if code.rank_of(graph.covered) < code.k:
        unmet.append(f"information locality exceeds r = {r}")
    applicable = not unmet
    small_d = applicable and d < r + 3

    overlapping = [
        (a, b) for a, b in combinations(edges, 2) if set(a).intersection(b)
    ]
    wrong_size = [e for e in edges if len(e) != r + 1]
    clauses = (
        ClauseResult(
            name="edges pairwise disjoint",
            holds=not overlapping,
            applicable=applicable,
            detail=f"overlapping pairs: {overlapping}" if overlapping else None,
        ),
        ClauseResult(
            name="edges have size r + 1",
            holds=not wrong_size,
            applicable=applicable,
            detail=f"edges of other sizes: {wrong_size}" if wrong_size else None,
        ),
        ClauseResult(
            name="k/r edges",
            holds=applicable and len(edges) == code.k // r,
            applicable=small_d,
            detail=f"{len(edges)} edges",
        ),
        ClauseResult(
            name="d - 2 isolated vertices",
            holds=len(graph.isolated) == d - 2,
            applicable=small_d,
            detail=f"{len(graph.isolated)} isolated",
        ),
    )
    if applicable and not small_d:
        unmet.append(f"d < r + 3 fails (d = {d}, r = {r}): edge count not asserted")
    return StructureReport(
        r=r,
        d=d,
        applicable=applicable,
        unmet=tuple(unmet),
        edges=edges,
        isolated=graph.isolated,
        clauses=clauses,
    )


def detect_canonical(
    code: LinearCode, r: int, budgets: Budgets = DEFAULT_BUDGETS
) -> CanonicalDetection:
    """Split a systematic optimal code into its three parts and check canonical form.

    Raises:
        NotSystematicError: If some unit vector is missing from the columns
        NotApplicableError: If d < r + 3, r < k, r | k or the length identity fails
    """
    info = code.unit_positions()
    if info is None:
        raise NotSystematicError("detect_canonical", code.missing_units())
    d = min_distance(code, budgets=budgets)
    unmet = _unmet_shape(code, r, d, need_small_d=True)
    if unmet:
        raise NotApplicableError("detect_canonical", unmet)

    rest = [j for j in range(code.n) if j not in set(info)]
    local = tuple(j for j in rest if weight(code.points[j]) == r)
    global_ = tuple(j for j in rest if weight(code.points[j]) == code.k)
    strays = [j for j in rest if j not in set(local) and j not in set(global_)]
    local_supports = tuple(support(code.points[j]) for j in local)

    covered = sorted(i for s in local_supports for i in s)
    clauses = (
        ClauseResult(
            name="parts cover [n]",
            holds=not strays,
            detail=f"columns of other weight: {strays}" if strays else None,
        ),
        ClauseResult(
            name="k/r local parities",
            holds=len(local) == code.k // r,
            detail=f"{len(local)} weight-{r} columns",
        ),
        ClauseResult(
            name="local supports partition [k]",
            holds=covered == list(range(code.k)),
            detail=f"supports {list(local_supports)}",
        ),
        ClauseResult(
            name="d - 2 global parities of weight k",
            holds=len(global_) == d - 2,
            detail=f"{len(global_)} weight-{code.k} columns",
        ),
    )
    canonical = all(c.holds for c in clauses)
    partition = (
        CanonicalPartition(
            information=info,
            local_parities=local,
            global_parities=global_,
            local_supports=local_supports,
        )
        if canonical
        else None
    )
    if not canonical:
        logger.warning(f"{code} meets the canonical preconditions but is not canonical")
    return CanonicalDetection(canonical=canonical, partition=partition, clauses=clauses)


# ---------------------------------------------------------------------------
# Parity locality


def parity_locality_floor(k: int, r: int, d: int) -> int:
    """k - (k/r - 1)(d - 3): least locality of the global parities of an optimal code.

    Raises:
        NotApplicableError: Unless d < r + 3, r < k and r | k
    """
    unmet = []
    if d >= r + 3:
        unmet.append(f"d < r + 3 fails (d = {d}, r = {r})")
    if r >= k:
        unmet.append(f"r < k fails (r = {r}, k = {k})")
    if r < 1 or k % r:
        unmet.append(f"r | k fails (r = {r}, k = {k})")
    if unmet:
        raise NotApplicableError("parity_locality_floor", unmet)
    return k - (k // r - 1) * (d - 3)


def _canonical_partition(
    code: LinearCode, r: int, operation: str, budgets: Budgets
) -> CanonicalPartition:
    detection = detect_canonical(code, r, budgets)
    if detection.partition is None:
        failed = [c.name for c in detection.clauses if not c.holds]
        raise NotApplicableError(operation, [f"code is not canonical: {failed}"])
    return detection.partition


def verify_parity_floor(
    code: LinearCode,
    r: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    profile: Optional[LocalityProfile] = None,
) -> ParityFloorReport:
    """Local parities have locality exactly r, global ones at least the floor.

    Raises:
        NotApplicableError: If the code is not an optimal canonical code
    """
    partition = _canonical_partition(code, r, "verify_parity_floor", budgets)
    d = min_distance(code, budgets=budgets)
    floor = parity_locality_floor(code.k, r, d)
    profile = profile or locality_profile(code, budgets)
    local: Dict[int, Locality] = {
        j: profile.localities[j] for j in partition.local_parities
    }
    global_: Dict[int, Locality] = {
        j: profile.localities[j] for j in partition.global_parities
    }
    clauses = (
        ClauseResult(
            name="local parities have locality r",
            holds=all(v == r for v in local.values()),
            detail=str(local),
        ),
        ClauseResult(
            name="global parities meet the floor",
            holds=all(v >= floor for v in global_.values()),
            detail=f"floor {floor}, localities {global_}",
        ),
    )
    return ParityFloorReport(
        k=code.k,
        r=r,
        d=d,
        floor=floor,
        local_parities=local,
        global_parities=global_,
        clauses=clauses,
    )


def verify_row_subcodes(
    code: LinearCode, r: int, budgets: Budgets = DEFAULT_BUDGETS
) -> RowSubcodeReport:
    """Check the MDS row subcodes of a canonical code.

    Messages supported on the support S_j of a local parity form a subcode of
    dimension r living on S_j, that parity and the global parities; it must be
    an [r + d - 1, r, d] MDS code there.
    """
    partition = _canonical_partition(code, r, "verify_row_subcodes", budgets)
    d = min_distance(code, budgets=budgets)
    generator = code.generator
    groups = []
    for j, (parity, rows) in enumerate(
        zip(partition.local_parities, partition.local_supports)
    ):
        sub = generator[list(rows), :]
        lives_on = tuple(
            c for c in range(code.n) if any(int(v) != 0 for v in sub[:, c])
        )
        dimension = array_rank(sub)
        mds = len(lives_on) == r + d - 1 and all(
            array_rank(sub[:, list(cols)]) == r for cols in combinations(lives_on, r)
        )
        groups.append(
            RowSubcodeGroup(
                group=j,
                info_support=rows,
                code_support=lives_on,
                dimension=dimension,
                mds=mds,
            )
        )

    expected = []
    for g in groups:
        lives = {partition.information[i] for i in g.info_support}
        lives.add(partition.local_parities[g.group])
        lives.update(partition.global_parities)
        expected.append(tuple(sorted(lives)))
    clauses = (
        ClauseResult(
            name="subcode support is S_j, its parity and C''",
            holds=all(g.code_support == e for g, e in zip(groups, expected)),
        ),
        ClauseResult(
            name="subcode dimension r", holds=all(g.dimension == r for g in groups)
        ),
        ClauseResult(name="subcode is MDS", holds=all(g.mds for g in groups)),
    )
    return RowSubcodeReport(r=r, d=d, groups=tuple(groups), clauses=clauses)


# ---------------------------------------------------------------------------
# Full analysis


def analyze_code(
    code: LinearCode,
    r: Optional[int] = None,
    budgets: Budgets = DEFAULT_BUDGETS,
    workers: int = 1,
    weights: bool = False,
) -> AnalysisReport:
    """Distance, localities, optimality and every applicable theorem check.

    Args:
        code: Code to analyse
        r: Locality parameter; the measured information locality by default
        budgets: Enumeration limits
        workers: Threads for the locality profile
        weights: Include the weight distribution

    Raises:
        BudgetExceededError: If the distance or locality profile does not fit
        IntegrityError: If the two distance oracles disagree
    """
    checks = distance_checks(code, budgets)
    if len(set(checks.values())) > 1:
        raise IntegrityError(f"Distance oracles disagree: {checks}")
    if checks:
        distance = next(iter(checks.values()))
    else:
        distance = min_distance(code, budgets=budgets)
    profile = locality_profile(code, budgets, workers)
    param: Locality = profile.information_locality if r is None else r
    notes: Dict[str, str] = {}

    finite = not math.isinf(param) and param >= 1
    bound = redundancy_bound(code.k, int(param), distance) if finite else None
    optimal = (
        bound is not None
        and profile.information_locality <= param
        and code.n - code.k == bound
    )

    greedy = structure = canonical = floor = rows = None
    if finite:
        r_int = int(param)
        try:
            graph = recovery_hypergraph(code, r_int, budgets)
            profile = profile.model_copy(update={"hypergraph": graph})
            greedy = guarded_section(
                notes, "greedy", lambda: greedy_certificate(code, r_int, budgets, graph)
            )
            structure = guarded_section(
                notes, "structure", lambda: check_structure(code, r_int, budgets, graph)
            )
        except BudgetExceededError as e:
            notes["hypergraph"] = str(e)
        canonical = guarded_section(
            notes, "canonical", lambda: detect_canonical(code, r_int, budgets)
        )
        if canonical is not None and canonical.canonical:
            floor = guarded_section(
                notes,
                "parity_floor",
                lambda: verify_parity_floor(code, r_int, budgets, profile),
            )
            rows = guarded_section(
                notes, "row_subcodes", lambda: verify_row_subcodes(code, r_int, budgets)
            )
    else:
        notes["locality"] = "no finite information locality; bound checks skipped"

    distribution = None
    if weights:
        counted = guarded_section(
            notes, "weights", lambda: weight_distribution(code, budgets)
        )
        distribution = tuple(counted or ())

    logger.info(f"Analysed {code}: d = {distance}, r = {param}, optimal = {optimal}")
    return AnalysisReport(
        field=str(code.field),
        n=code.n,
        k=code.k,
        distance=distance,
        distance_checks=checks,
        weights=distribution or None,
        profile=profile,
        r=param,
        redundancy=code.n - code.k,
        bound=bound,
        optimal=optimal,
        greedy=greedy,
        structure=structure,
        canonical=canonical,
        parity_floor=floor,
        row_subcodes=rows,
        notes=notes,
    )


def guarded_section(
    notes: Dict[str, str], name: str, compute: Callable[[], T]
) -> Optional[T]:
    """Run one report section, recording why it was skipped in ``notes``."""
    try:
        return compute()
    except (NotApplicableError, BudgetExceededError) as e:
        notes[name] = str(e)
        return None
