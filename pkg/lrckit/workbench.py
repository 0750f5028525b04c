"""The lrckit workbench: one entry point per command-line operation."""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bounds import analyze_code, guarded_section
from .code_model import LinearCode, certify_locality, locality_profile, min_distance
from .config import LrcKitConfig
from .constructions import (
    Word,
    build_canonical_d4,
    build_optimal_general,
    build_pyramid,
    build_uniform_locality,
    d4_code,
    d4_construction,
    decode_erasures,
    decode_erasures_d4,
)
from .exceptions import IntegrityError, ParameterError
from .field_algebra import to_vector
from .gpc import (
    GpcCode,
    check_elimination_bound,
    correct_erasures,
    enumerate_supports,
    gpc_locality,
    hall_equivalence_sweep,
    is_general_position,
    sample_gpc,
    support_graph_from_spec,
)
from .limits import BudgetMeter, validate_index_set, validate_positive
from .models import (
    AnalysisReport,
    ConstructionSummary,
    DecodeOutcome,
    GpcCheckReport,
    HallSweepReport,
    RepairOutcome,
    RepairReport,
    RepairTrial,
)
from .utils import complement

logger = logging.getLogger(__name__)

CONSTRUCTIONS: Dict[str, Tuple[str, ...]] = {
    "pyramid": ("k", "r", "d", "q"),
    "canonical-d4": ("k", "r", "q"),
    "optimal-general": ("k", "r", "d", "q"),
    "uniform": ("n", "k", "r", "d", "q"),
    "gpc": ("q",),
}


class LrcWorkbench:
    """Constructs, analyses, decodes and repairs locally repairable codes."""

    def __init__(self, config: Optional[LrcKitConfig] = None) -> None:
        """Initialize the workbench.

        Args:
            config: Budgets, default seed and worker count. If None, uses defaults.
        """
        self.config = config or LrcKitConfig()
        self.budgets = self.config.budgets

    def construct(
        self,
        construction: str,
        params: Dict[str, int],
        graph: Optional[str] = None,
        verify: bool = False,
    ) -> LinearCode:
        """Build a code by name.

        Args:
            construction: One of pyramid, canonical-d4, optimal-general, uniform, gpc
            params: Integer parameters the construction needs
            graph: Support graph text for ``gpc``
            verify: Measure distance and localities into the metadata

        Returns:
            The constructed code

        Raises:
            ParameterError: On an unknown construction or missing parameters
            SamplingFailedError: If a randomized construction does not verify
        """
        if construction not in CONSTRUCTIONS:
            raise ParameterError(
                f"Unknown construction '{construction}'",
                f"choose from {', '.join(CONSTRUCTIONS)}",
            )
        needed = CONSTRUCTIONS[construction]
        missing = [name for name in needed if params.get(name) is None]
        if missing:
            raise ParameterError(f"{construction} needs --{' --'.join(missing)}")
        p = params
        seed = self.config.seed

        if construction == "pyramid":
            code = build_pyramid(p["k"], p["r"], p["d"], p["q"])
        elif construction == "canonical-d4":
            code = build_canonical_d4(p["k"], p["r"], p["q"])
        elif construction == "optimal-general":
            code = build_optimal_general(
                p["k"], p["r"], p["d"], p["q"], seed, self.budgets
            )
        elif construction == "uniform":
            code = build_uniform_locality(
                p["n"], p["k"], p["r"], p["d"], p["q"], seed, self.budgets
            )
        else:
            if not graph:
                raise ParameterError("gpc needs --graph")
            support = support_graph_from_spec(graph)
            code = sample_gpc(support, p["q"], seed, self.budgets).linear_code

        if verify:
            profile = locality_profile(code, self.budgets, self.config.threads)
            code = code.with_metadata(
                distance=min_distance(code, budgets=self.budgets),
                localities=list(profile.localities),
            )
        return code

    def summarize(
        self, code: LinearCode, path: Optional[str] = None
    ) -> ConstructionSummary:
        return ConstructionSummary(
            construction=str(code.metadata.get("construction", "unknown")),
            n=code.n,
            k=code.k,
            field=str(code.field),
            distance=code.metadata.get("distance"),
            seed=code.metadata.get("seed"),
            path=path,
        )

    def analyze(
        self, code: LinearCode, r: Optional[int] = None, weights: bool = False
    ) -> AnalysisReport:
        """Run every analysis that applies to the code."""
        return analyze_code(code, r, self.budgets, self.config.threads, weights)

    def decode(self, code: LinearCode, word: Word) -> DecodeOutcome:
        """Recover erasures with the decoder matching the code's construction.

        The distance-4 family uses its two-step decoder and generalized
        pyramid codes solve from surviving parities; anything else is decoded
        by solving for the message.

        Raises:
            IntegrityError: If the unerased symbols belong to no codeword
        """
        construction = code.metadata.get("construction")
        params = code.metadata.get("params", {})
        if construction == "canonical-d4" and {"k", "r", "q"} <= set(params):
            cons = d4_construction(params["k"], params["r"], params["q"])
            if d4_code(cons) == code:
                return decode_erasures_d4(cons, word)
            logger.warning(
                "Columns differ from the distance-4 layout; using the generic decoder"
            )
        elif construction == "gpc" and code.unit_positions() == tuple(range(code.k)):
            return correct_erasures(GpcCode.from_linear_code(code), word)
        return decode_erasures(code, word)

    def gpc_check(
        self,
        code: Optional[LinearCode] = None,
        graph: Optional[str] = None,
        q: Optional[int] = None,
        sweep: bool = True,
    ) -> Tuple[GpcCode, GpcCheckReport]:
        """Check the generalized pyramid code theorems on a code or a fresh sample.

        Args:
            code: A systematic code to read the graph and points from
            graph: Support graph text, sampled over GF(q) when no code is given
            q: Field order for sampling
            sweep: Run the 2^(k+h) erasure pattern sweep

        Returns:
            The code examined and its report
        """
        if code is not None:
            gcode = GpcCode.from_linear_code(code)
            general = is_general_position(gcode, self.budgets)
            gcode = gcode.verified(general, "exhaustive")
        elif graph is not None and q is not None:
            support = support_graph_from_spec(graph)
            gcode = sample_gpc(support, q, self.config.seed, self.budgets)
        else:
            raise ParameterError("gpc-check needs a code file or --graph with --q")

        notes: Dict[str, str] = {}
        budgets, seed = self.budgets, self.config.seed
        hall: Optional[HallSweepReport] = None
        if sweep:
            hall = guarded_section(
                notes,
                "hall_sweep",
                lambda: hall_equivalence_sweep(gcode, seed, budgets),
            )
        report = GpcCheckReport(
            graph=gcode.graph.describe(),
            field=str(gcode.field),
            general_position=bool(gcode.general_position),
            hall_sweep=hall,
            locality=guarded_section(
                notes, "locality", lambda: gpc_locality(gcode, budgets)
            ),
            elimination=guarded_section(
                notes,
                "elimination",
                lambda: check_elimination_bound(gcode, budgets, seed),
            ),
            supports=guarded_section(
                notes, "supports", lambda: enumerate_supports(gcode, budgets)
            ),
            notes=notes,
        )
        return gcode, report

    def simulate_repair(
        self,
        code: LinearCode,
        failures: Optional[Sequence[int]] = None,
        count: int = 1,
        trials: int = 1,
    ) -> RepairReport:
        """Erase coordinates and rebuild each from the surviving ones.

        Each lost symbol gets its smallest certified repair set among the
        survivors. A repair that reads no more symbols than the coordinate's
        own locality counts as local; one forced larger by other failures
        counts as global.

        Args:
            code: Code to exercise
            failures: Fixed failed coordinates; random ones when None
            count: Failures per random trial
            trials: Number of trials

        Raises:
            ParameterError: On bad failure sets or counts
            IntegrityError: If a repair does not reproduce the lost column
        """
        validate_positive("trials", trials)
        if failures is not None:
            failures = validate_index_set("failures", failures, code.n)
        else:
            validate_positive("count", count)
            if count > code.n:
                raise ParameterError(f"Cannot fail {count} of {code.n} coordinates")

        profile = locality_profile(code, self.budgets, self.config.threads)
        rng = np.random.default_rng(self.config.seed)
        results: List[RepairTrial] = []
        reads: List[int] = []
        tally = {"local": 0, "global": 0, "unrecoverable": 0}

        for _ in range(trials):
            if failures is not None:
                failed = failures
            else:
                drawn = rng.choice(code.n, size=count, replace=False)
                failed = tuple(sorted(int(i) for i in drawn))
            survivors = complement(failed, code.n)
            outcomes = []
            for position in failed:
                meter = BudgetMeter("repair_subsets", self.budgets.repair_subsets)
                cert = certify_locality(code, position, self.budgets, meter, survivors)
                if math.isinf(cert.locality):
                    kind = "unrecoverable"
                else:
                    self._check_repair(
                        code, position, cert.repair_set or (), cert.coefficients or ()
                    )
                    own = profile.localities[position]
                    kind = "local" if cert.locality <= own else "global"
                    reads.append(int(cert.locality))
                tally[kind] += 1
                outcomes.append(
                    RepairOutcome(
                        position=position,
                        kind=kind,
                        repair_set=cert.repair_set,
                        coefficients=cert.coefficients,
                    )
                )
            results.append(RepairTrial(failed=failed, outcomes=tuple(outcomes)))

        logger.info(f"Simulated {trials} repair trials on {code}: {tally}")
        return RepairReport(
            n=code.n,
            trials=tuple(results),
            local_repairs=tally["local"],
            global_repairs=tally["global"],
            unrecoverable=tally["unrecoverable"],
            symbols_read=sum(reads),
            max_fan_in=max(reads, default=0),
            mean_fan_in=sum(reads) / len(reads) if reads else None,
        )

    @staticmethod
    def _check_repair(
        code: LinearCode,
        position: int,
        repair_set: Sequence[int],
        coefficients: Sequence[int],
    ) -> None:
        target = to_vector(code.generator[:, position])
        if not repair_set:
            rebuilt = tuple(0 for _ in target)
        else:
            weights = code.field.array(list(coefficients))
            rebuilt = to_vector(code.columns(repair_set) @ weights)
        if rebuilt != target:
            raise IntegrityError(
                "Repair coefficients do not rebuild the lost symbol", [position]
            )
