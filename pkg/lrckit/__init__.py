"""lrckit - locally repairable codes: constructions, bounds and pyramid codes."""

from .bounds import (
    analyze_code,
    check_structure,
    detect_canonical,
    greedy_certificate,
    redundancy_bound,
    verify_parity_floor,
)
from .code_model import (
    LinearCode,
    encode,
    locality,
    locality_profile,
    min_distance,
    recovery_hypergraph,
)
from .codefile import load_code, parse_code, save_code, serialize_code
from .config import Budgets, LrcKitConfig, load_config
from .constructions import (
    build_canonical_d4,
    build_optimal_general,
    build_pyramid,
    build_uniform_locality,
    decode_erasures,
    decode_erasures_d4,
    make_mds_systematic,
)
from .exceptions import (
    BudgetExceededError,
    CodeFileError,
    DimensionError,
    FieldError,
    IntegrityError,
    LrcKitError,
    MalformedInputError,
    NotApplicableError,
    NotSystematicError,
    ParameterError,
    SamplingFailedError,
)
from .field_algebra import (
    FieldElement,
    FieldSpec,
    MatrixGF,
    kernel_basis,
    make_field,
    rank,
    solve,
)
from .gpc import (
    GpcCode,
    can_eliminate,
    correct_erasures,
    hall_condition,
    is_general_position,
    max_matching,
    sample_gpc,
)
from .models import (
    AnalysisReport,
    DecodeOutcome,
    ErasurePattern,
    LocalityProfile,
    SupportGraph,
)
from .workbench import LrcWorkbench

__version__ = "0.1.0"

__all__ = [
    # Main facade
    "LrcWorkbench",
    # Fields and matrices
    "FieldSpec",
    "FieldElement",
    "MatrixGF",
    "make_field",
    "rank",
    "kernel_basis",
    "solve",
    # Codes
    "LinearCode",
    "encode",
    "min_distance",
    "locality",
    "locality_profile",
    "recovery_hypergraph",
    "make_mds_systematic",
    "build_pyramid",
    "build_canonical_d4",
    "build_optimal_general",
    "build_uniform_locality",
    "decode_erasures",
    "decode_erasures_d4",
    # Bounds
    "redundancy_bound",
    "greedy_certificate",
    "check_structure",
    "detect_canonical",
    "verify_parity_floor",
    "analyze_code",
    # Generalized pyramid codes
    "GpcCode",
    "max_matching",
    "hall_condition",
    "sample_gpc",
    "is_general_position",
    "correct_erasures",
    "can_eliminate",
    # Files and configuration
    "load_code",
    "save_code",
    "parse_code",
    "serialize_code",
    "Budgets",
    "LrcKitConfig",
    "load_config",
    # Data models
    "AnalysisReport",
    "DecodeOutcome",
    "ErasurePattern",
    "LocalityProfile",
    "SupportGraph",
    # Exceptions
    "LrcKitError",
    "ParameterError",
    "FieldError",
    "DimensionError",
    "MalformedInputError",
    "CodeFileError",
    "NotApplicableError",
    "NotSystematicError",
    "SamplingFailedError",
    "BudgetExceededError",
    "IntegrityError",
]
