"""Code constructions: MDS bases, pyramid codes, the distance-4 glued family,
k-cores, general-position sampling and the randomized optimal families."""

import logging
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

from .code_model import (
    LinearCode,
    certify_locality,
    encode,
    field_for_order,
    min_distance,
)
from .config import DEFAULT_BUDGETS, Budgets
from .exceptions import (
    DimensionError,
    IntegrityError,
    ParameterError,
    SamplingFailedError,
)
from .field_algebra import FieldSpec, array_kernel, array_rank, array_solve, to_vector
from .limits import validate_index_set, validate_positive
from .models import (
    D4Construction,
    DecodeOutcome,
    GeneralPositionFamily,
    MdsBase,
    SubspaceL,
)
from .utils import ceil_div, consecutive_blocks, unit_vector

logger = logging.getLogger(__name__)

Word = Sequence[Optional[int]]


# ---------------------------------------------------------------------------
# MDS base codes


def _vandermonde(
    field: FieldSpec, k: int, points: Sequence[Optional[int]]
) -> galois.FieldArray:
    gf = field.gf
    matrix = gf.Zeros((k, len(points)))
    for j, x in enumerate(points):
        if x is None:
            # Point at infinity: the leading coefficient.
            matrix[k - 1, j] = 1
            continue
        value = gf(1)
        for a in range(k):
            matrix[a, j] = value
            value = value * gf(x)
    return matrix


def make_mds_systematic(k: int, d: int, q: int, extended: bool = False) -> MdsBase:
    """Systematic Reed-Solomon code [k+d-1, k, d] over GF(q).

    Degree-<k polynomials are evaluated at the field elements 0, 1, ..., k+d-2
    and the generator is brought to systematic form. With ``extended`` the
    code may also use the point at infinity, allowing k + d - 1 = q + 1.

    Raises:
        ParameterError: If q has too few evaluation points
    """
    validate_positive("k", k)
    validate_positive("d", d, minimum=2)
    field = field_for_order(q)
    n = k + d - 1
    if n <= q:
        points: List[Optional[int]] = list(range(n))
    elif extended and n == q + 1:
        points = list(range(q)) + [None]
    else:
        need = "q >= k + d - 1" if not extended else "q >= k + d - 2"
        raise ParameterError(
            f"Field too small for an [{n}, {k}, {d}] MDS code", f"{need}, got q = {q}"
        )

    vandermonde = _vandermonde(field, k, points)
    systematic = np.linalg.inv(vandermonde[:, :k]) @ vandermonde
    parities = tuple(to_vector(systematic[:, j]) for j in range(k, n))
    for j, p in enumerate(parities):
        if any(v == 0 for v in p):
            raise IntegrityError(f"MDS parity p_{j} does not have full weight")
    return MdsBase(
        field=field,
        k=k,
        d=d,
        parities=parities,
        evaluation_points=tuple("inf" if x is None else x for x in points),
    )


def mds_code(base: MdsBase) -> LinearCode:
    return LinearCode(
        base.field,
        base.points,
        systematic_info=range(base.k),
        metadata={
            "construction": "mds",
            "params": {"k": base.k, "d": base.d, "q": base.q},
        },
    )


# ---------------------------------------------------------------------------
# Pyramid codes


def build_pyramid(k: int, r: int, d: int, q: int) -> LinearCode:
    """Pyramid code: split the first MDS parity across consecutive groups of size r.

    Produces an [k + ceil(k/r) + d - 2, k, d] code with information locality r.
    """
    validate_positive("k", k)
    validate_positive("r", r)
    validate_positive("d", d, minimum=2)
    if r > k:
        raise ParameterError(f"r must be <= k, got r = {r}, k = {k}")
    base = make_mds_systematic(k, d, q)
    groups = consecutive_blocks(k, r)

    points: List[Tuple[int, ...]] = [unit_vector(k, i) for i in range(k)]
    p0 = base.parities[0]
    for group in groups:
        points.append(tuple(p0[i] if i in group else 0 for i in range(k)))
    points.extend(base.parities[1:])

    metadata = {
        "construction": "pyramid",
        "params": {"k": k, "r": r, "d": d, "q": q},
        "groups": [list(g) for g in groups],
    }
    code = LinearCode(base.field, points, systematic_info=range(k), metadata=metadata)
    logger.info(f"Built pyramid code [{code.n}, {k}, {d}] over {base.field}")
    return code


# ---------------------------------------------------------------------------
# The distance-4 glued family


def d4_construction(k: int, r: int, q: int) -> D4Construction:
    """Block code, recombination coefficients and layout of the distance-4 family.

    Raises:
        ParameterError: Unless r < k, r | k and q >= r + 2
    """
    validate_positive("k", k, minimum=2)
    validate_positive("r", r)
    if r >= k or k % r:
        raise ParameterError(f"Need r < k and r | k, got k = {k}, r = {r}")
    if q < r + 2:
        raise ParameterError(f"Need q >= r + 2, got q = {q}")
    base = make_mds_systematic(r, 4, q, extended=True)
    field = base.field
    gf = field.gf
    p1 = gf(list(base.parities[1]))
    p2 = gf(list(base.parities[2]))

    alpha_r = p1[r - 1] / p2[r - 1]
    alphas = [p1[j] - alpha_r * p2[j] for j in range(r - 1)] + [alpha_r]
    if any(a == 0 for a in alphas):
        raise IntegrityError("Recombination coefficients must be nonzero")

    combo = gf.Zeros(r)
    for j in range(r - 1):
        combo[j] = alphas[j]
    if np.any(np.asarray(p1 - combo - alpha_r * p2) != 0):
        raise IntegrityError("p1 is not recovered by the recombination coefficients")

    return D4Construction(
        field=field, k=k, r=r, base=base, alphas=tuple(int(a) for a in alphas)
    )


def d4_code(cons: D4Construction) -> LinearCode:
    """The glued code: information blocks, one local parity per block, two globals."""
    k, r, t = cons.k, cons.r, cons.t
    p0, p1, p2 = cons.base.parities[:3]
    points: List[Tuple[int, ...]] = [unit_vector(k, i) for i in range(k)]
    for b in range(t):
        lo, hi = b * r, (b + 1) * r
        points.append(tuple(p0[i - lo] if lo <= i < hi else 0 for i in range(k)))
    points.append(tuple(p1) * t)
    points.append(tuple(p2) * t)
    metadata = {
        "construction": "canonical-d4",
        "params": {"k": k, "r": r, "q": cons.field.order},
        "alphas": list(cons.alphas),
        "evaluation_points": list(cons.base.evaluation_points),
    }
    return LinearCode(cons.field, points, systematic_info=range(k), metadata=metadata)


def build_canonical_d4(k: int, r: int, q: int) -> LinearCode:
    """Systematic [k + k/r + 2, k, 4] code whose two global parities have
    locality k - k/r + 1."""
    code = d4_code(d4_construction(k, r, q))
    logger.info(f"Built distance-4 glued code [{code.n}, {k}, 4] over {code.field}")
    return code


def d4_global_repair(
    cons: D4Construction, which: int
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Repair set and coefficients for global parity ``which`` (0 or 1).

    The set is the first r - 1 information symbols of every block plus the
    other global parity, k - t + 1 symbols in all.
    """
    if which not in (0, 1):
        raise ParameterError(f"which must be 0 or 1, got {which}")
    gf = cons.field.gf
    r, t = cons.r, cons.t
    alphas = gf(list(cons.alphas))
    info = tuple(b * r + j for b in range(t) for j in range(r - 1))
    first, second = cons.global_positions
    if which == 0:
        coefficients = [alphas[j] for _ in range(t) for j in range(r - 1)]
        coefficients.append(alphas[r - 1])
        indices = info + (second,)
        target = first
    else:
        scale = np.reciprocal(alphas[r - 1])
        coefficients = [-alphas[j] * scale for _ in range(t) for j in range(r - 1)]
        coefficients.append(scale)
        indices = info + (first,)
        target = second

    code = d4_code(cons)
    values = gf([int(c) for c in coefficients])
    combo = code.columns(indices) @ values
    if np.any(np.asarray(combo - code.generator[:, target]) != 0):
        raise IntegrityError(
            "Global repair coefficients do not reproduce the parity", [target]
        )
    return indices, to_vector(values)


def check_word(word: Word, n: int, q: int) -> Tuple[int, ...]:
    """Validate a received word and return its erased positions."""
    if len(word) != n:
        raise DimensionError("word", n, len(word))
    for i, v in enumerate(word):
        if v is not None and not 0 <= v < q:
            raise ParameterError(f"Symbol {v} at position {i} is not in GF({q})")
    return tuple(i for i, v in enumerate(word) if v is None)


def _confirm(code: LinearCode, message: Sequence[int], word: Word) -> Tuple[int, ...]:
    codeword = encode(code, message)
    bad = [i for i, v in enumerate(word) if v is not None and v != codeword[i]]
    if bad:
        raise IntegrityError(
            "Unerased symbols are inconsistent with every codeword", bad
        )
    return codeword


def decode_erasures_d4(cons: D4Construction, word: Word) -> DecodeOutcome:
    """Two-step erasure decoder of the distance-4 glued code.

    Step 1 repairs every block holding a single erasure from its local
    parity. Step 2 handles the one block that may still hold erasures: the
    global parities give p_1 . y_j and p_2 . y_j, and the block MDS code is
    decoded from what is known. Any three erasures decode.

    Args:
        cons: The construction that produced the code
        word: Symbols with None at erased positions

    Returns:
        The outcome; patterns beyond the decoder's reach are reported, not raised

    Raises:
        IntegrityError: If the unerased symbols belong to no codeword
    """
    code = d4_code(cons)
    erased = check_word(word, code.n, code.q)
    gf = cons.field.gf
    k, r, t = cons.k, cons.r, cons.t
    p0, p1, p2 = (gf(list(p)) for p in cons.base.parities[:3])
    known: Dict[int, galois.FieldArray] = {
        i: gf(v) for i, v in enumerate(word) if v is not None
    }
    steps: List[str] = []

    for b in range(t):
        block = cons.block(b)
        missing = [i for i in block if i not in known]
        if len(missing) != 1:
            continue
        (lost,) = missing
        info = block[:-1]
        if lost == block[-1]:
            known[lost] = sum((p0[l] * known[i] for l, i in enumerate(info)), gf(0))
        else:
            j = lost - b * r
            terms = (p0[l] * known[i] for l, i in enumerate(info) if i != lost)
            rest = sum(terms, gf(0))
            known[lost] = (known[block[-1]] - rest) / p0[j]
        steps.append(f"step 1: block {b} repaired position {lost} locally")

    damaged = [b for b in range(t) if any(i not in known for i in cons.block(b))]
    if len(damaged) > 1:
        return DecodeOutcome(
            success=False,
            erased=erased,
            steps=tuple(steps),
            reason=f"blocks {damaged} still hold erasures after local repair",
        )

    if damaged:
        (j,) = damaged
        rows: List[galois.FieldArray] = []
        values: List[galois.FieldArray] = []
        for l in range(r):
            if j * r + l in known:
                e = gf.Zeros(r)
                e[l] = 1
                rows.append(e)
                values.append(known[j * r + l])
        if k + j in known:
            rows.append(p0)
            values.append(known[k + j])
        others = [b for b in range(t) if b != j]
        first, second = cons.global_positions
        for parity, position in ((p1, first), (p2, second)):
            if position not in known:
                continue
            rest = gf(0)
            for b in others:
                terms = (parity[l] * known[b * r + l] for l in range(r))
                rest = rest + sum(terms, gf(0))
            rows.append(parity)
            values.append(known[position] - rest)

        if rows:
            entries = [[int(v) for v in row] for row in rows]
            system = gf(np.array(entries, dtype=np.int64))
        else:
            system = gf.Zeros((0, r))
        if array_rank(system) < r:
            return DecodeOutcome(
                success=False,
                erased=erased,
                steps=tuple(steps),
                reason=f"block {j} has too few surviving equations",
            )
        rhs = gf(np.array([int(v) for v in values], dtype=np.int64))
        y = array_solve(system, rhs)
        if y is None:
            raise IntegrityError(f"Block {j} symbols contradict the global parities")
        for l in range(r):
            known[j * r + l] = y[l]
        steps.append(f"step 2: block {j} decoded from {len(rows)} block-code symbols")

    message = [int(known[i]) for i in range(k)]
    codeword = _confirm(code, message, word)
    return DecodeOutcome(
        success=True, codeword=codeword, erased=erased, steps=tuple(steps)
    )


def decode_erasures(code: LinearCode, word: Word) -> DecodeOutcome:
    """Erasure decoding of any linear code by solving for the message.

    Erased symbols are recoverable exactly when each erased column lies in the
    span of the unerased ones.
    """
    erased = check_word(word, code.n, code.q)
    kept = tuple(i for i in range(code.n) if i not in set(erased))
    rank_kept = code.rank_of(kept)
    lost = [i for i in erased if code.rank_of(kept + (i,)) != rank_kept]
    if lost:
        return DecodeOutcome(
            success=False,
            erased=erased,
            reason=f"positions {lost} are outside the span of the surviving symbols",
        )
    if kept:
        system = code.field.array([list(code.points[i]) for i in kept])
        rhs = code.field.array([word[i] for i in kept])
    else:
        system = code.field.zeros((0, code.k))
        rhs = code.field.zeros(0)
    message = array_solve(system, rhs)
    if message is None:
        raise IntegrityError(
            "Unerased symbols are inconsistent with every codeword", list(kept)
        )
    codeword = _confirm(code, to_vector(message), word)
    return DecodeOutcome(
        success=True,
        codeword=codeword,
        erased=erased,
        steps=("solved for the message",),
    )


# ---------------------------------------------------------------------------
# k-cores and general position


def is_k_core(indices: Sequence[int], subspace: SubspaceL, k: int) -> bool:
    """True iff no nonzero vector of L is supported inside the k-set S.

    Computed as rank(L restricted to the complement of S) = dim L.

    Raises:
        ParameterError: If |S| != k
    """
    chosen = validate_index_set("S", indices, subspace.n, size=k)
    if subspace.dim == 0:
        return True
    rest = [i for i in range(subspace.n) if i not in set(chosen)]
    if not rest:
        return False
    basis = subspace.field.array(list(subspace.basis))
    return array_rank(basis[:, rest]) == subspace.dim


def dual_generator(subspace: SubspaceL) -> galois.FieldArray:
    """Rows spanning L-perp."""
    if subspace.dim == 0:
        return subspace.field.gf.Identity(subspace.n)
    return array_kernel(subspace.field.array(list(subspace.basis)))


def is_k_core_dual(indices: Sequence[int], subspace: SubspaceL, k: int) -> bool:
    """k-core test through L-perp: columns S of its generator are independent."""
    chosen = validate_index_set("S", indices, subspace.n, size=k)
    return array_rank(dual_generator(subspace)[:, list(chosen)]) == k


def k_cores(subspace: SubspaceL, k: int) -> List[Tuple[int, ...]]:
    return [s for s in combinations(range(subspace.n), k) if is_k_core(s, subspace, k)]


def general_position_field_bound(n: int, k: int) -> int:
    """Field size k * n^k above which random sampling is guaranteed to work."""
    return k * n**k


def sample_general_position(
    subspace: SubspaceL,
    k: int,
    q: int,
    seed: int = 0,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> GeneralPositionFamily:
    """Sample points in general position subject to L.

    The k rows of the point matrix are drawn uniformly from L-perp; seeds
    seed, seed + 1, ... are tried until every k-core has full rank.

    Raises:
        ParameterError: If q does not match L's field or dim L-perp < k
        SamplingFailedError: When the retry limit is exhausted
    """
    if q != subspace.field.order:
        raise ParameterError(
            f"q = {q} does not match the field of L ({subspace.field})"
        )
    validate_positive("k", k)
    n = subspace.n
    perp = dual_generator(subspace)
    if perp.shape[0] < k:
        raise ParameterError(f"dim L-perp = {perp.shape[0]} is smaller than k = {k}")

    exhaustive = n <= budgets.kcore_exhaustive_max_n
    cores = k_cores(subspace, k) if exhaustive else []
    gf = subspace.field.gf

    for attempt in range(budgets.sampling_retries):
        current = seed + attempt
        rng = np.random.default_rng(current)
        matrix = gf.Random((k, perp.shape[0]), seed=rng) @ perp
        if subspace.dim and np.any(
            np.asarray(subspace.field.array(list(subspace.basis)) @ matrix.T) != 0
        ):
            raise IntegrityError("Sampled points are not annihilated by L")

        if exhaustive:
            checked = cores
        else:
            checked = []
            for _ in range(budgets.kcore_spot_checks):
                drawn = rng.choice(n, size=k, replace=False)
                candidate = tuple(sorted(int(i) for i in drawn))
                if is_k_core(candidate, subspace, k):
                    checked.append(candidate)
        bad = next((s for s in checked if array_rank(matrix[:, list(s)]) < k), None)
        if bad is None:
            logger.info(
                f"General position reached with seed {current} "
                f"after {attempt + 1} attempts"
            )
            return GeneralPositionFamily(
                field=subspace.field,
                k=k,
                points=tuple(to_vector(matrix[:, j]) for j in range(n)),
                subspace=subspace,
                seed=current,
                attempts=attempt + 1,
                kcore_check="exhaustive" if exhaustive else "spot-check",
                kcores_checked=len(checked),
            )
        logger.debug(f"Seed {current} rejected: k-core {bad} is rank deficient")

    logger.warning(
        f"No general-position sample in {budgets.sampling_retries} seeds from {seed}"
    )
    raise SamplingFailedError("sample_general_position", seed, budgets.sampling_retries)


def _systematize(
    family: GeneralPositionFamily, info: Sequence[int], metadata: Dict[str, object]
) -> LinearCode:
    matrix = family.field.array([list(c) for c in family.points]).T
    systematic = np.linalg.inv(matrix[:, list(info)]) @ matrix
    points = [to_vector(systematic[:, j]) for j in range(systematic.shape[1])]
    return LinearCode(family.field, points, systematic_info=info, metadata=metadata)


def _first_full_rank(
    family: GeneralPositionFamily, candidates: Sequence[Tuple[int, ...]]
) -> Optional[Tuple[int, ...]]:
    matrix = family.field.array([list(c) for c in family.points]).T
    for info in candidates:
        if array_rank(matrix[:, list(info)]) == family.k:
            return info
    return None


def build_optimal_general(
    k: int,
    r: int,
    d: int,
    q: int,
    seed: int = 0,
    budgets: Budgets = DEFAULT_BUDGETS,
    verify: bool = True,
) -> LinearCode:
    """Optimal systematic code whose d - 2 global parities meet the locality floor.

    Support layout: blocks P_1..P_t of size r + 1 cover the first k + t
    coordinates, M is the last d - 2, and P_0 is M plus the last r - d + 3
    positions of every block. v_0 is all ones on P_0 and v_i takes the values
    1..r+1 on P_i. Points are sampled in general position subject to
    span{v_i} and the code is made systematic on the first r positions of
    every block (or the next valid choice in lexicographic order).

    Raises:
        ParameterError: Unless 2 < d < r + 3, r < k, r | k and q >= r + 2
        SamplingFailedError: If no sample verifies
    """
    validate_positive("k", k, minimum=2)
    validate_positive("r", r)
    if not 2 < d < r + 3:
        raise ParameterError(f"Need 2 < d < r + 3, got d = {d}, r = {r}")
    if r >= k or k % r:
        raise ParameterError(f"Need r < k and r | k, got k = {k}, r = {r}")
    field = field_for_order(q)
    if q < r + 2:
        raise ParameterError(f"Need q >= r + 2 for distinct block values, got q = {q}")

    t = k // r
    n = k + t + d - 2
    blocks = consecutive_blocks(k + t, r + 1)
    globals_ = tuple(range(k + t, n))
    tail = r - d + 3
    tails = (i for block in blocks for i in block[-tail:])
    p0 = tuple(sorted(set(globals_).union(tails)))

    basis = [tuple(1 if i in p0 else 0 for i in range(n))]
    for block in blocks:
        basis.append(tuple(block.index(i) + 1 if i in block else 0 for i in range(n)))
    subspace = SubspaceL(field=field, n=n, basis=tuple(basis))

    floor = k - (t - 1) * (d - 3)
    choices = product(*(combinations(b, r) for b in blocks))
    candidates = [sum(choice, ()) for choice in choices]

    current = seed
    for _ in range(budgets.sampling_retries):
        family = sample_general_position(subspace, k, q, current, budgets)
        current = family.seed + 1
        info = _first_full_rank(family, candidates)
        if info is None:
            logger.warning(f"Seed {family.seed}: no systematic basis avoids M")
            continue
        metadata = {
            "construction": "optimal-general",
            "params": {"k": k, "r": r, "d": d, "q": q},
            "seed": family.seed,
            "blocks": [list(b) for b in blocks],
            "p0": list(p0),
            "information_set": list(info),
            "field_bound_met": q > general_position_field_bound(n, k),
        }
        code = _systematize(family, info, metadata)
        local = {i: r for i in range(k + t) if i not in set(info)}
        floors = {g: floor for g in globals_}
        if not verify or _verified(code, d, local, floors, budgets=budgets):
            logger.info(f"Built optimal code [{n}, {k}, {d}] with seed {family.seed}")
            return code
        logger.warning(f"Seed {family.seed} produced a code failing verification")
    raise SamplingFailedError("build_optimal_general", seed, budgets.sampling_retries)


def _verified(
    code: LinearCode,
    d: int,
    *expected: Dict[int, int],
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    if min_distance(code, budgets=budgets) != d:
        return False
    for table in expected:
        for position, value in table.items():
            if certify_locality(code, position, budgets).locality != value:
                return False
    return True


def build_uniform_locality(
    n: int,
    k: int,
    r: int,
    d: int,
    q: int,
    seed: int = 0,
    budgets: Budgets = DEFAULT_BUDGETS,
    verify: bool = True,
) -> LinearCode:
    """Optimal code in which every symbol, parities included, has locality r.

    The n coordinates split into n / (r + 1) consecutive blocks, each carrying
    an all-ones dependency; points are sampled in general position subject
    to these and the code is made systematic on the lexicographically least
    full-rank k-set.

    Raises:
        ParameterError: Unless (r + 1) | n and n - k = ceil(k/r) + d - 2
        SamplingFailedError: If no sample verifies
    """
    validate_positive("n", n)
    validate_positive("k", k)
    validate_positive("r", r)
    validate_positive("d", d, minimum=2)
    if n % (r + 1):
        raise ParameterError(f"Need (r + 1) | n, got n = {n}, r = {r}")
    if n - k != ceil_div(k, r) + d - 2:
        raise ParameterError(
            "Need n - k = ceil(k/r) + d - 2",
            f"n - k = {n - k}, ceil(k/r) + d - 2 = {ceil_div(k, r) + d - 2}",
        )
    field = field_for_order(q)
    blocks = consecutive_blocks(n, r + 1)
    basis = tuple(tuple(1 if i in block else 0 for i in range(n)) for block in blocks)
    subspace = SubspaceL(field=field, n=n, basis=basis)

    current = seed
    for _ in range(budgets.sampling_retries):
        family = sample_general_position(subspace, k, q, current, budgets)
        current = family.seed + 1
        info = _first_full_rank(family, list(combinations(range(n), k)))
        if info is None:
            continue
        metadata = {
            "construction": "uniform",
            "params": {"n": n, "k": k, "r": r, "d": d, "q": q},
            "seed": family.seed,
            "blocks": [list(b) for b in blocks],
            "information_set": list(info),
            "field_bound_met": q > general_position_field_bound(n, k),
        }
        code = _systematize(family, info, metadata)
        if not verify or _verified(code, d, {i: r for i in range(n)}, budgets=budgets):
            logger.info(
                f"Built uniform-locality code [{n}, {k}, {d}] with seed {family.seed}"
            )
            return code
        logger.warning(f"Seed {family.seed} produced a code failing verification")
    raise SamplingFailedError("build_uniform_locality", seed, budgets.sampling_retries)

