"""Command-line interface for lrckit.

Subcommands: construct, analyze, decode, gpc-check and simulate-repair. Reports
go to stdout (as JSON with ``--json``); logging goes to stderr. The exit code
is 0 on success, 2 for usage and input errors, 3 when sampling fails, 4 when a
budget is exceeded, 5 for an undecodable word and 6 on integrity failures.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import BaseModel

from .code_model import LinearCode
from .codefile import format_word, load_code, load_word, save_code
from .config import load_config, merge_overrides
from .exceptions import LrcKitError
from .limits import audit_log
from .models import AnalysisReport, GpcCheckReport, RepairReport
from .utils import format_indices, format_locality
from .workbench import CONSTRUCTIONS, LrcWorkbench

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNDECODABLE = 5
EXIT_INTEGRITY = 6


def _index_list(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got '{text}'"
        )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; common flags are accepted after every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="Print machine-readable JSON"
    )
    common.add_argument(
        "--seed", type=int, default=None, help="Seed for all randomness"
    )
    common.add_argument("--threads", type=int, default=None, help="Worker threads")
    common.add_argument("--config", default=None, help="JSON configuration file")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity on stderr",
    )
    common.add_argument(
        "--verify", action="store_true", help="Re-derive distance and localities"
    )

    parser = argparse.ArgumentParser(
        prog="lrckit", description="Construct and analyse locally repairable codes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", parents=[common], help="Build a code file")
    construct.add_argument("construction", choices=list(CONSTRUCTIONS))
    for name in ("n", "k", "r", "d", "q"):
        construct.add_argument(f"--{name}", type=int, default=None)
    construct.add_argument(
        "--graph", default=None, help="Support graph, e.g. '0,1;2,3'"
    )
    construct.add_argument("-o", "--output", required=True, help="Code file to write")

    analyze = sub.add_parser("analyze", parents=[common], help="Analyse a code file")
    analyze.add_argument("codefile")
    analyze.add_argument("--r", type=int, default=None, help="Locality parameter")
    analyze.add_argument("--weights", action="store_true", help="Weight distribution")

    decode = sub.add_parser("decode", parents=[common], help="Recover erased symbols")
    decode.add_argument("codefile")
    decode.add_argument("wordfile", help="Symbols with '?' for erasures")
    decode.add_argument("-o", "--output", default=None, help="Write the recovered word")

    check = sub.add_parser(
        "gpc-check", parents=[common], help="Generalized pyramid checks"
    )
    check.add_argument("codefile", nargs="?", default=None)
    check.add_argument("--graph", default=None, help="Support graph to sample")
    check.add_argument("--q", type=int, default=None, help="Field order for sampling")
    check.add_argument("--no-sweep", action="store_true", help="Skip the erasure sweep")

    repair = sub.add_parser(
        "simulate-repair", parents=[common], help="Simulate node repair"
    )
    repair.add_argument("codefile")
    repair.add_argument("--failures", type=_index_list, default=None, help="e.g. '1,3'")
    repair.add_argument(
        "--count", type=int, default=1, help="Random failures per trial"
    )
    repair.add_argument("--trials", type=int, default=1)
    return parser


def _dump(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


def _localities(values: Sequence[float]) -> str:
    return " ".join(format_locality(v) for v in values)


def render_analysis(report: AnalysisReport) -> List[str]:
    """Human-readable lines for an analysis report."""
    profile = report.profile
    lines = [
        f"code: [{report.n}, {report.k}] over {report.field}",
        f"distance: {report.distance}",
    ]
    if report.distance_checks:
        methods = sorted(report.distance_checks.items())
        checks = ", ".join(f"{m}={d}" for m, d in methods)
        lines.append(f"distance checks: {checks}")
    if report.weights is not None:
        lines.append(f"weights: {' '.join(str(w) for w in report.weights)}")
    lines += [
        f"localities: {_localities(profile.localities)}",
        f"information locality: {format_locality(profile.information_locality)}",
        f"redundancy: {report.redundancy}",
    ]
    if report.bound is not None:
        lines.append(f"bound: {report.bound}")
    lines.append(f"optimal: {str(report.optimal).lower()}")
    if report.greedy is not None:
        g = report.greedy
        lines.append(
            f"greedy certificate: {'valid' if g.certified else 'invalid'} "
            f"(case {g.case}, |S| = {len(g.final_set)}, needed {g.required_size})"
        )
    if report.structure is not None:
        s = report.structure
        if s.holds:
            verdict = "holds"
        else:
            verdict = "fails" if s.applicable else "not applicable"
        lines.append(f"structure: {verdict}")
    if report.canonical is not None:
        lines.append(f"canonical: {'yes' if report.canonical.canonical else 'no'}")
    if report.parity_floor is not None:
        f = report.parity_floor
        globals_ = sorted(set(f.global_parities.values()))
        lines.append(f"global parity locality: {_localities(globals_)}")
        lines.append(f"parity floor: {f.floor} ({'holds' if f.holds else 'fails'})")
    if report.row_subcodes is not None:
        lines.append(f"row subcodes: {'mds' if report.row_subcodes.holds else 'fail'}")
    notes = sorted(report.notes.items())
    lines.extend(f"note [{name}]: {text}" for name, text in notes)
    return lines


def render_gpc(report: GpcCheckReport) -> List[str]:
    lines = [
        f"graph: {report.graph} over {report.field}",
        f"general position: {str(report.general_position).lower()}",
    ]
    if report.hall_sweep is not None:
        h = report.hall_sweep
        lines.append(
            f"hall sweep: {h.patterns} patterns, {h.hall_holds} satisfy Hall, "
            f"{h.decodable} decodable, {len(h.mismatches)} mismatches"
        )
    if report.locality is not None:
        loc = report.locality
        lines.append(f"parity degrees: {' '.join(str(d) for d in loc.degrees)}")
        lines.append(f"parity localities: {_localities(loc.localities)}")
    if report.elimination is not None:
        e = report.elimination
        lines.append(
            f"eliminations: {e.witnessed} of {e.pairs_checked} witnessed, "
            f"{len(e.bound_violations)} bound and "
            f"{len(e.necessity_violations)} Hall violations"
        )
    if report.supports is not None:
        s = report.supports
        status = "agree" if s.agree else "disagree"
        lines.append(
            f"supports: {len(s.brute_force)} found, characterization {status}"
            + ("" if s.applicable else " (not applicable)")
        )
    notes = sorted(report.notes.items())
    lines.extend(f"note [{name}]: {text}" for name, text in notes)
    lines.append(f"holds: {str(report.holds).lower()}")
    return lines


def render_repair(report: RepairReport) -> List[str]:
    lines = []
    for trial in report.trials:
        parts = []
        for o in trial.outcomes:
            read = format_indices(o.repair_set) if o.repair_set is not None else "-"
            parts.append(f"{o.position}:{o.kind}{read}")
        lines.append(f"failed {format_indices(trial.failed)}: {' '.join(parts)}")
    mean = "-" if report.mean_fan_in is None else f"{report.mean_fan_in:.3f}"
    lines += [
        f"local repairs: {report.local_repairs}",
        f"global repairs: {report.global_repairs}",
        f"unrecoverable: {report.unrecoverable}",
        f"symbols read: {report.symbols_read}",
        f"max fan-in: {report.max_fan_in}",
        f"mean fan-in: {mean}",
    ]
    return lines


class LrcCli:
    """Dispatches parsed arguments to the workbench and prints reports."""

    def __init__(self, args: argparse.Namespace) -> None:
        config = merge_overrides(
            load_config(args.config), {"seed": args.seed, "threads": args.threads}
        )
        self.args = args
        self.workbench = LrcWorkbench(config)

    def _emit(self, text: str) -> None:
        print(text, flush=True)

    def _load(self, path: str) -> LinearCode:
        return load_code(path, verify=self.args.verify, budgets=self.workbench.budgets)

    def run(self) -> int:
        handlers = {
            "construct": self._handle_construct,
            "analyze": self._handle_analyze,
            "decode": self._handle_decode,
            "gpc-check": self._handle_gpc_check,
            "simulate-repair": self._handle_simulate_repair,
        }
        return handlers[self.args.command]()

    def _handle_construct(self) -> int:
        args = self.args
        params = {name: getattr(args, name) for name in ("n", "k", "r", "d", "q")}
        audit_log(
            "construct", construction=args.construction, output=args.output, **params
        )
        code = self.workbench.construct(
            args.construction, params, args.graph, args.verify
        )
        save_code(code, args.output)
        summary = self.workbench.summarize(code, args.output)
        if args.json:
            self._emit(_dump(summary))
        else:
            shape = f"[{summary.n}, {summary.k}] over {summary.field}"
            parts = [f"{summary.construction} {shape}"]
            if summary.distance is not None:
                parts.append(f"d = {summary.distance}")
            if summary.seed is not None:
                parts.append(f"seed = {summary.seed}")
            parts.append(f"written to {args.output}")
            self._emit("; ".join(parts))
        return EXIT_OK

    def _handle_analyze(self) -> int:
        args = self.args
        audit_log("analyze", codefile=args.codefile, r=args.r, weights=args.weights)
        report = self.workbench.analyze(self._load(args.codefile), args.r, args.weights)
        self._emit(_dump(report) if args.json else "\n".join(render_analysis(report)))
        return EXIT_OK

    def _handle_decode(self) -> int:
        args = self.args
        audit_log("decode", codefile=args.codefile, wordfile=args.wordfile)
        code = self._load(args.codefile)
        word = load_word(args.wordfile)
        outcome = self.workbench.decode(code, word)
        if outcome.success and args.output:
            with open(args.output, "w") as f:
                f.write(format_word(list(outcome.codeword or ())) + "\n")
        if args.json:
            self._emit(_dump(outcome))
        elif outcome.success:
            self._emit(format_word(list(outcome.codeword or ())))
        else:
            self._emit("UNDECODABLE")
            logger.info(f"Undecodable: {outcome.reason}")
        return EXIT_OK if outcome.success else EXIT_UNDECODABLE

    def _handle_gpc_check(self) -> int:
        args = self.args
        audit_log("gpc_check", codefile=args.codefile, graph=args.graph, q=args.q)
        code = self._load(args.codefile) if args.codefile else None
        sweep = not args.no_sweep
        _, report = self.workbench.gpc_check(code, args.graph, args.q, sweep)
        self._emit(_dump(report) if args.json else "\n".join(render_gpc(report)))
        return EXIT_OK if report.holds else EXIT_INTEGRITY

    def _handle_simulate_repair(self) -> int:
        args = self.args
        audit_log(
            "simulate_repair",
            codefile=args.codefile,
            failures=args.failures,
            count=args.count,
            trials=args.trials,
        )
        report = self.workbench.simulate_repair(
            self._load(args.codefile), args.failures, args.count, args.trials
        )
        self._emit(_dump(report) if args.json else "\n".join(render_repair(report)))
        return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return LrcCli(args).run()
    except LrcKitError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
