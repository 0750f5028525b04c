"""Data models for lrckit."""

import math
from typing import Annotated, Dict, List, Optional, Tuple, Union

import networkx as nx
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)

from .field_algebra import FieldSpec, array_rank
from .utils import format_locality, parse_locality

Vector = Tuple[int, ...]
IndexSet = Tuple[int, ...]

# Infinity is math.inf in memory and the string "inf" in JSON.
LocalityValue = Annotated[
    Union[int, float],
    BeforeValidator(parse_locality),
    PlainSerializer(
        lambda v: v if not math.isinf(v) else format_locality(v), when_used="json"
    ),
]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


class ErasurePattern(_Frozen):
    """Erased information coordinates S and erased parity coordinates T."""

    erased_info: IndexSet = Field(default=(), description="Erased information indices")
    erased_parities: IndexSet = Field(default=(), description="Erased parity indices")

    @field_validator("erased_info", "erased_parities")
    @classmethod
    def _sorted_unique(cls, v: IndexSet) -> IndexSet:
        if len(set(v)) != len(v) or any(i < 0 for i in v):
            raise ValueError(f"indices must be distinct and non-negative: {list(v)}")
        return tuple(sorted(v))

    def positions(self, k: int) -> IndexSet:
        """Erased coordinates of the systematic word of length k + h."""
        return self.erased_info + tuple(k + j for j in self.erased_parities)


class SupportGraph(_Frozen):
    """Bipartite graph G([k], [h], E) recording the support of every parity point."""

    k: int = Field(..., ge=1, description="Number of information vertices")
    h: int = Field(..., ge=0, description="Number of parity vertices")
    neighborhoods: Tuple[IndexSet, ...] = Field(
        ..., description="Information neighbours of each parity"
    )

    @model_validator(mode="after")
    def _check_graph(self) -> "SupportGraph":
        if len(self.neighborhoods) != self.h:
            raise ValueError(
                f"expected {self.h} neighborhoods, got {len(self.neighborhoods)}"
            )
        for j, gamma in enumerate(self.neighborhoods):
            if not gamma:
                raise ValueError(f"parity {j} has degree 0")
            if tuple(sorted(set(gamma))) != tuple(gamma):
                raise ValueError(f"N({j}) must be sorted and distinct")
            if gamma[0] < 0 or gamma[-1] >= self.k:
                raise ValueError(f"N({j}) leaves the range [0, {self.k})")
        return self

    @classmethod
    def from_edges(cls, k: int, h: int, edges: List[Tuple[int, int]]) -> "SupportGraph":
        gammas: List[set] = [set() for _ in range(h)]
        for i, j in edges:
            gammas[j].add(i)
        return cls(k=k, h=h, neighborhoods=tuple(tuple(sorted(g)) for g in gammas))

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for j, gamma in enumerate(self.neighborhoods) for i in gamma]

    def gamma(self, j: int) -> IndexSet:
        return self.neighborhoods[j]

    def degree(self, j: int) -> int:
        return len(self.neighborhoods[j])

    def gamma_union(self, parities: IndexSet) -> IndexSet:
        """The union of N(j) over j in J."""
        return tuple(sorted({i for j in parities for i in self.neighborhoods[j]}))

    def parity_neighbors(self, info: IndexSet, within: IndexSet) -> IndexSet:
        """N_J(I): parities in J adjacent to some vertex of I."""
        wanted = set(info)
        return tuple(j for j in within if wanted.intersection(self.neighborhoods[j]))

    def to_networkx(self) -> nx.Graph:
        """Bipartite networkx view with nodes ("i", i) and ("p", j)."""
        graph = nx.Graph()
        graph.add_nodes_from((("i", i) for i in range(self.k)), bipartite=0)
        graph.add_nodes_from((("p", j) for j in range(self.h)), bipartite=1)
        graph.add_edges_from((("i", i), ("p", j)) for i, j in self.edges)
        return graph

    def describe(self) -> str:
        return ";".join(",".join(str(i) for i in g) for g in self.neighborhoods)


class MdsBase(_Frozen):
    """Parity vectors p_0..p_{d-2} of a systematic [k+d-1, k, d] MDS code."""

    field: FieldSpec = Field(..., description="Alphabet")
    k: int = Field(..., ge=1, description="Dimension")
    d: int = Field(..., ge=2, description="Minimum distance")
    parities: Tuple[Vector, ...] = Field(..., description="Parity vectors in F_q^k")
    evaluation_points: Tuple[Union[int, str], ...] = Field(
        ...,
        description="Reed-Solomon evaluation points, 'inf' for the point at infinity",
    )

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def points(self) -> List[Vector]:
        """Columns of the systematic generator matrix."""
        units = [
            tuple(1 if a == b else 0 for a in range(self.k)) for b in range(self.k)
        ]
        return units + list(self.parities)


class D4Construction(_Frozen):
    """The distance-4 family built by gluing t copies of an [r+3, r, 4] block code."""

    field: FieldSpec = Field(..., description="Alphabet")
    k: int = Field(..., ge=2, description="Dimension")
    r: int = Field(..., ge=1, description="Block size (information locality)")
    base: MdsBase = Field(..., description="Block MDS code [r+3, r, 4]")
    alphas: Vector = Field(
        ..., description="alpha_1..alpha_r with p1 = sum alpha_j e_j + alpha_r p2"
    )

    @property
    def t(self) -> int:
        return self.k // self.r

    @property
    def n(self) -> int:
        return self.k + self.t + 2

    def block(self, b: int) -> IndexSet:
        """Coordinates of block b: its r information symbols and its local parity."""
        return tuple(range(b * self.r, (b + 1) * self.r)) + (self.k + b,)

    @property
    def global_positions(self) -> Tuple[int, int]:
        return (self.k + self.t, self.k + self.t + 1)


class SubspaceL(_Frozen):
    """A subspace L of F_q^n given by independent basis vectors."""

    field: FieldSpec = Field(..., description="Alphabet")
    n: int = Field(..., ge=1, description="Ambient length")
    basis: Tuple[Vector, ...] = Field(default=(), description="Basis vectors of L")

    @model_validator(mode="after")
    def _check_basis(self) -> "SubspaceL":
        for v in self.basis:
            if len(v) != self.n:
                raise ValueError(f"basis vector has length {len(v)}, expected {self.n}")
        if self.basis:
            if array_rank(self.field.array(list(self.basis))) != len(self.basis):
                raise ValueError("basis vectors of L are linearly dependent")
        return self

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def supports(self) -> List[IndexSet]:
        return [tuple(i for i, x in enumerate(v) if x) for v in self.basis]


class GeneralPositionFamily(_Frozen):
    """Points annihilated by L whose restriction to every k-core has full rank."""

    field: FieldSpec = Field(..., description="Alphabet")
    k: int = Field(..., ge=1, description="Dimension of the points")
    points: Tuple[Vector, ...] = Field(..., description="c_1..c_n in F_q^k")
    subspace: SubspaceL = Field(..., description="The subspace the points respect")
    seed: int = Field(..., description="Accepted seed")
    attempts: int = Field(
        ..., ge=1, description="Seeds tried, including the accepted one"
    )
    kcore_check: str = Field(..., description="'exhaustive' or 'spot-check'")
    kcores_checked: int = Field(
        ..., ge=0, description="k-cores whose rank was verified"
    )


class HyperEdge(_Frozen):
    """A minimal local dependency: sum of coefficients[j] * c_{indices[j]} is zero."""

    indices: IndexSet = Field(..., description="Edge support")
    coefficients: Vector = Field(..., description="Nonzero dependency coefficients")


class RecoveryHypergraph(_Frozen):
    """H_r: minimal dependencies of size at most r + 1."""

    r: int = Field(..., ge=0, description="Locality parameter")
    n: int = Field(..., ge=1, description="Number of vertices")
    edges: Tuple[HyperEdge, ...] = Field(default=(), description="Hyperedges")

    @property
    def covered(self) -> IndexSet:
        """Vertices incident to at least one edge."""
        return tuple(sorted({i for e in self.edges for i in e.indices}))

    @property
    def isolated(self) -> IndexSet:
        seen = set(self.covered)
        return tuple(i for i in range(self.n) if i not in seen)


class LocalityCertificate(_Frozen):
    """A repair set R with c_i = sum coefficients[j] * c_{repair_set[j]}."""

    index: int = Field(..., ge=0, description="Coordinate repaired")
    locality: LocalityValue = Field(..., description="|R|, or inf")
    repair_set: Optional[IndexSet] = Field(None, description="R, None when inf")
    coefficients: Optional[Vector] = Field(None, description="Repair coefficients")


class LocalityProfile(_Frozen):
    """Per-coordinate localities with the derived code-level values."""

    n: int = Field(..., description="Code length")
    k: int = Field(..., description="Code dimension")
    localities: Tuple[LocalityValue, ...] = Field(
        ..., description="Locality of each coordinate"
    )
    certificates: Tuple[LocalityCertificate, ...] = Field(
        default=(),
        description="Lexicographically least minimal repair set per coordinate",
    )
    information_locality: LocalityValue = Field(..., description="Information locality")
    hypergraph: Optional[RecoveryHypergraph] = Field(
        None, description="H_r at r = information locality, when computed"
    )

    @property
    def overall(self) -> Union[int, float]:
        """loc(C), the largest coordinate locality."""
        return max(self.localities) if self.localities else 0


class GreedyStep(_Frozen):
    chosen: int = Field(..., description="Coordinate c_i picked")
    edge: IndexSet = Field(..., description="Hyperedge T_i containing c_i")
    added: IndexSet = Field(..., description="Coordinates added to S")
    truncated: bool = Field(
        ..., description="True when only part of the edge was added"
    )
    s: int = Field(..., description="Size increment s_i")
    t: int = Field(..., description="Rank increment t_i")


class GreedyTrace(_Frozen):
    """Run of the set-growing argument behind the redundancy bound."""

    k: int
    r: int
    n: int
    steps: Tuple[GreedyStep, ...] = Field(default=(), description="Steps in order")
    final_set: IndexSet = Field(default=(), description="S_l")
    final_rank: int = Field(..., description="rank(S_l), k - 1 at termination")
    case: int = Field(..., description="1 if no step was truncated, otherwise 2")
    required_size: int = Field(..., description="k + ceil(k/r) - 2")
    distance_ceiling: int = Field(..., description="n - |S_l|, an upper bound on d")
    certified: bool = Field(
        ..., description="|S| >= k + ceil(k/r) - 2 and rank(S) = k - 1"
    )


class ClauseResult(_Frozen):
    """Pass/fail for one clause of a theorem check."""

    name: str
    holds: bool
    applicable: bool = True
    detail: Optional[str] = None


class StructureReport(_Frozen):
    r: int
    d: int
    applicable: bool = Field(
        ..., description="Whether every precondition of the check holds"
    )
    unmet: Tuple[str, ...] = Field(default=(), description="Unmet preconditions")
    edges: Tuple[IndexSet, ...] = Field(default=(), description="Edges of H_r")
    isolated: IndexSet = Field(default=(), description="Isolated vertices of H_r")
    clauses: Tuple[ClauseResult, ...] = Field(default=())

    @property
    def holds(self) -> bool:
        return self.applicable and all(c.holds for c in self.clauses if c.applicable)


class CanonicalPartition(_Frozen):
    """I, C' and C'' of a canonical code."""

    information: IndexSet = Field(..., description="Unit-vector coordinates in order")
    local_parities: IndexSet = Field(..., description="C': weight-r parities")
    global_parities: IndexSet = Field(..., description="C'': weight-k parities")
    local_supports: Tuple[IndexSet, ...] = Field(
        ..., description="Information support of each local parity"
    )


class CanonicalDetection(_Frozen):
    canonical: bool
    partition: Optional[CanonicalPartition] = None
    clauses: Tuple[ClauseResult, ...] = Field(default=())


class ParityFloorReport(_Frozen):
    k: int
    r: int
    d: int
    floor: int = Field(..., description="k - (k/r - 1)(d - 3)")
    local_parities: Dict[int, LocalityValue] = Field(default_factory=dict)
    global_parities: Dict[int, LocalityValue] = Field(default_factory=dict)
    clauses: Tuple[ClauseResult, ...] = Field(default=())

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.clauses)

    @property
    def attained(self) -> bool:
        """True when some global parity sits exactly at the floor."""
        return any(v == self.floor for v in self.global_parities.values())


class RowSubcodeGroup(_Frozen):
    group: int
    info_support: IndexSet
    code_support: IndexSet = Field(
        ..., description="Coordinates where the subcode lives"
    )
    dimension: int
    mds: bool


class RowSubcodeReport(_Frozen):
    r: int
    d: int
    groups: Tuple[RowSubcodeGroup, ...] = Field(default=())
    clauses: Tuple[ClauseResult, ...] = Field(default=())

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.clauses)


class AnalysisReport(_Frozen):
    """Everything `lrckit analyze` prints."""

    field: str
    n: int
    k: int
    distance: int
    distance_checks: Dict[str, int] = Field(
        default_factory=dict, description="Distance per method that fit its budget"
    )
    weights: Optional[Tuple[int, ...]] = None
    profile: LocalityProfile
    r: LocalityValue = Field(..., description="Locality parameter analysed")
    redundancy: int
    bound: Optional[int] = Field(None, description="ceil(k/r) + d - 2")
    optimal: bool
    greedy: Optional[GreedyTrace] = None
    structure: Optional[StructureReport] = None
    canonical: Optional[CanonicalDetection] = None
    parity_floor: Optional[ParityFloorReport] = None
    row_subcodes: Optional[RowSubcodeReport] = None
    notes: Dict[str, str] = Field(
        default_factory=dict, description="Why a section is missing"
    )


class DecodeOutcome(_Frozen):
    """Result of an erasure decoder; undecodable is an outcome, not an error."""

    success: bool
    codeword: Optional[Vector] = None
    erased: IndexSet = Field(default=())
    steps: Tuple[str, ...] = Field(default=(), description="Decoder steps taken")
    reason: Optional[str] = None


class EliminationResult(_Frozen):
    info: IndexSet = Field(..., description="I, the coordinates to eliminate")
    parities: IndexSet = Field(..., description="J, the parities combined")
    possible: bool
    witness: Optional[Vector] = Field(None, description="mu_j for j in J, all nonzero")
    resulting_support: Optional[IndexSet] = None
    necessary_condition: bool = Field(
        ..., description="|N_J(I')| > |I'| for every nonempty I' of I"
    )
    method: str = Field(..., description="How the coefficient space was searched")


class EliminationBoundReport(_Frozen):
    general_position: bool
    pairs_checked: int
    witnessed: int
    bound_violations: Tuple[Tuple[IndexSet, IndexSet], ...] = Field(default=())
    necessity_violations: Tuple[Tuple[IndexSet, IndexSet], ...] = Field(default=())

    @property
    def holds(self) -> bool:
        return not self.bound_violations and not self.necessity_violations


class GpcLocalityReport(_Frozen):
    general_position: bool
    degrees: Tuple[int, ...]
    localities: Tuple[LocalityValue, ...]
    mismatches: IndexSet = Field(
        default=(), description="Parities with locality != degree"
    )

    @property
    def matches(self) -> bool:
        return not self.mismatches


class SupportClosureReport(_Frozen):
    applicable: bool
    q: int
    n: int
    supports: Tuple[IndexSet, ...] = Field(default=())
    closed: bool
    counterexample: Optional[Tuple[IndexSet, IndexSet]] = None
    note: Optional[str] = None


class SupportEnumerationReport(_Frozen):
    applicable: bool
    general_position: bool
    brute_force: Tuple[IndexSet, ...] = Field(default=())
    combinatorial: Tuple[IndexSet, ...] = Field(default=())
    agree: bool
    note: Optional[str] = None


class HallSweepReport(_Frozen):
    patterns: int
    hall_holds: int
    decodable: int
    mismatches: Tuple[ErasurePattern, ...] = Field(default=())

    @property
    def agree(self) -> bool:
        return not self.mismatches


class GpcCheckReport(_Frozen):
    graph: str
    field: str
    general_position: bool
    hall_sweep: Optional[HallSweepReport] = None
    locality: Optional[GpcLocalityReport] = None
    elimination: Optional[EliminationBoundReport] = None
    supports: Optional[SupportEnumerationReport] = None
    notes: Dict[str, str] = Field(default_factory=dict)

    @property
    def holds(self) -> bool:
        checks = [self.general_position]
        if self.hall_sweep is not None:
            checks.append(self.hall_sweep.agree)
        if self.locality is not None:
            checks.append(self.locality.matches)
        if self.elimination is not None:
            checks.append(self.elimination.holds)
        if self.supports is not None and self.supports.applicable:
            checks.append(self.supports.agree)
        return all(checks)


class RepairOutcome(_Frozen):
    position: int
    kind: str = Field(..., description="local, global or unrecoverable")
    repair_set: Optional[IndexSet] = None
    coefficients: Optional[Vector] = None


class RepairTrial(_Frozen):
    failed: IndexSet
    outcomes: Tuple[RepairOutcome, ...]


class RepairReport(_Frozen):
    """Simulated node failures and how each lost symbol is rebuilt."""

    n: int
    trials: Tuple[RepairTrial, ...]
    local_repairs: int = 0
    global_repairs: int = 0
    unrecoverable: int = 0
    symbols_read: int = 0
    max_fan_in: int = 0
    mean_fan_in: Optional[float] = None


class ConstructionSummary(_Frozen):
    """What `lrckit construct` reports after writing a file."""

    construction: str
    n: int
    k: int
    field: str
    distance: Optional[int] = None
    seed: Optional[int] = None
    path: Optional[str] = None


class CodeFileMeta(BaseModel):
    """Metadata block of a code file; unknown keys are carried through."""

    model_config = ConfigDict(extra="allow")

    construction: Optional[str] = Field(
        None, description="Constructor that built the code"
    )
    params: Dict[str, int] = Field(
        default_factory=dict, description="Constructor arguments"
    )
    seed: Optional[int] = Field(None, description="Accepted sampling seed")
    distance: Optional[int] = Field(None, ge=1, description="Measured minimum distance")
    localities: Optional[List[LocalityValue]] = Field(
        None, description="Measured locality of every coordinate"
    )
    systematic_info: Optional[List[int]] = Field(
        None, description="Positions of the unit columns e_1..e_k"
    )
