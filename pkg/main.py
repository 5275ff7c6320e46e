#!filepath: main.py
"""
circ: command-line entry point for the parameterized circuit lab.

Every subcommand prints a human view by default and a JSON report with an
attached run manifest under --json. Exit codes: 0 success or pass, 1 failed
verdict or library error, 2 usage error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import pathlib
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

import colorama
from colorama import Fore, Style
from dotenv import load_dotenv
from pydantic import BaseModel, Field

from algebra.errors import CircuitLabError, PrecisionExhausted
from algebra.scalar import format_scalar, parse_scalar
from approx.evaluate import approx_eval
from approx.instance import load_germ
from approx.witness import convergence_witness
from circuit_ir.classify import classify, is_essentially_division_free, is_totally_division_free
from circuit_ir.domain import AffineSpace, PointDomain
from circuit_ir.parser import circuit_to_dict, load_circuit, load_domain, save_circuit
from circuit_ir.validate import validate
from cost_model.report import cost, parameter_audit
from family.builders import build_beta_n, build_H
from family.eliminant import identity_sides
from family.formula import build_formula, formula_growth, universal_size
from lowerbound.audit import CHARTS, AuditVerdict, audit_candidate
from lowerbound.certificate import STRATEGIES, rank_certificate
from lowerbound.config import LowerBoundSettings
from repro_suites import SUITES, run_suites
from semantics.consistency import consistency_check
from semantics.evaluate import eval_point
from semantics.sampling import REPRO_STREAM, SplitRandom
from semantics.symbolic import expand_symbolic
from transforms.gc import garbage_collect
from transforms.join import JoinSpec, join
from transforms.reduce import reduce_circuit
from transforms.restrict import restrict

__version__ = "0.1.0"

colorama.init()
# Color constants
C_PASS = Fore.GREEN
C_FAIL = Fore.RED
C_INFO = Fore.CYAN
C_KEY = Fore.YELLOW
C_RESET = Style.RESET_ALL
C_BOLD = Style.BRIGHT


class AppSettings:
    """
    Global CLI defaults, loaded from the .env file using dotenv.
    """
    seed: int
    json_output: bool
    log_level: str

    def __init__(self):
        self.dotenv_path = pathlib.Path(__file__).parent / '.env'
        load_dotenv(dotenv_path=self.dotenv_path, encoding='utf-8', verbose=False)

        self.seed = int(os.getenv("CIRC_SEED", 0))
        self.json_output = os.getenv("CIRC_JSON", 'False').lower() == 'true'
        self.log_level = os.getenv("CIRC_LOG_LEVEL", "WARNING").upper()


# Configure logging with ISO timestamp
logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s.%(msecs)03d - %(levelname)s - %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)
logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Bad flag values that argparse cannot catch; mapped to exit code 2."""


class InputHash(BaseModel):
    path: str
    sha256: str


class RunManifest(BaseModel):
    """
    Pydantic model attached to every --json report. The result digest covers
    the report payload only, so equal inputs and seed give equal digests.
    """
    command: List[str]
    seed: int
    version: str = __version__
    inputs: List[InputHash] = Field(default_factory=list)
    wall_time: float = Field(..., description="Seconds spent in the subcommand")
    result_digest: str


@dataclass
class Outcome:
    """What a subcommand hands back: JSON payload, human lines and the pass/fail bit."""
    payload: Dict[str, Any]
    lines: List[str] = field(default_factory=list)
    ok: bool = True


def result_digest(payload: Dict[str, Any]) -> str:
    text = json.dumps(payload, sort_keys=True, default=str, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def file_hash(path: str) -> InputHash:
    return InputHash(path=path, sha256=hashlib.sha256(pathlib.Path(path).read_bytes()).hexdigest())


def parse_scalars(text: Optional[str], what: str) -> List[Any]:
    if text is None or not text.strip():
        return []
    try:
        return [parse_scalar(item.strip()) for item in text.split(",")]
    except CircuitLabError as e:
        raise UsageError(f"--{what}: {e}") from e


def status(ok: bool) -> str:
    return f"{C_PASS}{C_BOLD}PASS{C_RESET}" if ok else f"{C_FAIL}{C_BOLD}FAIL{C_RESET}"


def write_or_show(circuit, output: Optional[str], payload: Dict[str, Any], lines: List[str]) -> None:
    if output:
        save_circuit(circuit, output)
        payload["written"] = output
        lines.append(f"Circuit with {circuit.size} nodes written to {C_KEY}{output}{C_RESET}")
    else:
        payload["circuit"] = circuit_to_dict(circuit)
        lines.append(json.dumps(payload["circuit"], indent=2))


def domain_for(args, params: int):
    if getattr(args, "point", None):
        return PointDomain(parse_scalars(args.point, "point"))
    if getattr(args, "domain", None):
        return load_domain(args.domain)
    return AffineSpace(params)


# --- circuit_ir / semantics -------------------------------------------------

def cmd_validate(args) -> Outcome:
    report = validate(load_circuit(args.file))
    lines = [f"{args.file}: {report.node_count} nodes, valid: {status(report.valid)}"]
    lines += [f"  {C_FAIL}{v.kind}{C_RESET} node {v.node}: {v.message}" for v in report.violations]
    return Outcome(report.model_dump(), lines, report.valid)


def cmd_classify(args) -> Outcome:
    circuit = load_circuit(args.file)
    table = classify(circuit)
    payload = {
        "nodes": {str(node_id): flags.to_dict() for node_id, flags in table.items()},
        "totally_division_free": is_totally_division_free(circuit),
        "essentially_division_free": is_essentially_division_free(circuit, table),
    }
    lines = [f"{'node':>6} {'input':>6} {'param':>6} {'pnode':>6} {'essential':>9}"]
    for node_id, flags in table.items():
        lines.append(f"{node_id:>6} {flags.depends_on_input!s:>6} {flags.depends_on_param!s:>6} "
                     f"{flags.is_parameter_node!s:>6} {flags.is_essential!s:>9}")
    lines.append(f"totally division-free: {payload['totally_division_free']}, "
                 f"essentially division-free: {payload['essentially_division_free']}")
    return Outcome(payload, lines)


def cmd_eval(args) -> Outcome:
    circuit = load_circuit(args.file)
    trace = eval_point(circuit, parse_scalars(args.params, "params"), parse_scalars(args.inputs, "inputs"))
    outputs = [format_scalar(v) for v in trace.outputs]
    return Outcome({"outputs": outputs}, [f"outputs: {C_INFO}{', '.join(outputs)}{C_RESET}"])


def cmd_expand(args) -> Outcome:
    expansion = expand_symbolic(load_circuit(args.file), budget=args.budget)
    outputs = expansion.format_outputs()
    payload = {
        "variables": expansion.names(),
        "outputs": outputs,
        "polynomial_in_x": expansion.polynomial_in_x,
        "non_polynomial_nodes": expansion.non_polynomial_nodes,
        "totally_division_free": expansion.totally_division_free,
        "essentially_division_free": expansion.essentially_division_free,
    }
    lines = [f"y{k + 1} = {C_INFO}{text}{C_RESET}" for k, text in enumerate(outputs)]
    lines.append(f"polynomial in X: {status(expansion.polynomial_in_x)}")
    return Outcome(payload, lines, expansion.polynomial_in_x or not expansion.essentially_division_free)


def cmd_consistent(args) -> Outcome:
    circuit = load_circuit(args.file)
    result = consistency_check(circuit, domain_for(args, circuit.params), mode=args.mode, trials=args.trials,
                               seed=args.seed)
    lines = [f"verdict: {status(result.consistent)} ({result.verdict.value}, {result.mode})"]
    if result.failing_nodes:
        lines.append(f"failing divisions: {result.failing_nodes}")
    return Outcome(result.model_dump(mode="json"), lines, result.consistent)


# --- transforms -------------------------------------------------------------

def cmd_join(args) -> Outcome:
    g1, g2 = load_circuit(args.first), load_circuit(args.second)
    try:
        spec = JoinSpec.parse(args.map, args.onto) if args.map else JoinSpec.identity(len(g1.outputs), args.onto)
    except ValueError as e:
        raise UsageError(f"--map: {e}") from e
    domain = load_domain(args.domain) if args.domain else None
    joined = join(g1, g2, spec, domain=domain, seed=args.seed)
    payload: Dict[str, Any] = {"node_count": joined.size}
    lines: List[str] = []
    write_or_show(joined, args.output, payload, lines)
    return Outcome(payload, lines)


def cmd_reduce(args) -> Outcome:
    circuit = load_circuit(args.file)
    domain = load_domain(args.domain) if args.domain else None
    report = reduce_circuit(circuit, "exact" if args.exact else "fingerprint", domain, args.seed)
    payload: Dict[str, Any] = {
        "node_count_before": circuit.size,
        "node_count": report.circuit.size,
        "merges": [list(pair) for pair in report.merges],
        "skipped": [list(pair) for pair in report.skipped],
        "rounds": report.rounds,
    }
    lines = [f"{circuit.size} -> {report.circuit.size} nodes, {report.removed} merges in {report.rounds} rounds"]
    if report.skipped:
        lines.append(f"{C_KEY}undecided pairs left alone: {report.skipped}{C_RESET}")
    write_or_show(report.circuit, args.output, payload, lines)
    return Outcome(payload, lines)


def cmd_gc(args) -> Outcome:
    circuit = load_circuit(args.file)
    collected = garbage_collect(circuit)
    payload: Dict[str, Any] = {"node_count_before": circuit.size, "node_count": collected.size}
    lines = [f"{circuit.size} -> {collected.size} nodes"]
    write_or_show(collected, args.output, payload, lines)
    return Outcome(payload, lines)


def cmd_restrict(args) -> Outcome:
    circuit = load_circuit(args.file)
    if not (args.domain or args.point):
        raise UsageError("restrict needs --domain or --point")
    parent = load_domain(args.parent_domain) if args.parent_domain else None
    result = restrict(circuit, domain_for(args, circuit.params), domain=parent, mode=args.mode, seed=args.seed)
    payload: Dict[str, Any] = {
        "domain": result.domain.to_dict(),
        "verdict": result.verdict.model_dump(mode="json"),
        "approx_candidates": result.approx_candidates,
        "membership_ok": result.membership_ok,
    }
    lines = [f"consistent over {result.domain.kind}: {status(result.consistent)}"]
    if result.approx_candidates:
        lines.append(f"approximation candidates: {result.approx_candidates}")
    if result.membership_ok is False:
        lines.append(f"{C_FAIL}sampled points leave the parent domain{C_RESET}")
    write_or_show(result.circuit, args.output, payload, lines)
    return Outcome(payload, lines, result.consistent and result.membership_ok is not False)


# --- cost_model -------------------------------------------------------------

def cmd_cost(args) -> Outcome:
    circuit = load_circuit(args.file)
    report = cost(circuit)
    payload = report.model_dump()
    payload["essential_parameters"] = parameter_audit(circuit).model_dump()
    lines = [f"{C_KEY}{name}{C_RESET}: {value}" for name, value in report.model_dump().items()]
    lines.append(f"{C_KEY}essential parameters{C_RESET}: {payload['essential_parameters']['m']}")
    return Outcome(payload, lines)


# --- family -----------------------------------------------------------------

def cmd_family_h(args) -> Outcome:
    circuit = build_H(args.n, duplicate_factor_chain=args.duplicate)
    payload: Dict[str, Any] = {"n": args.n, "node_count": circuit.size}
    lines: List[str] = []
    write_or_show(circuit, args.output, payload, lines)
    return Outcome(payload, lines)


def cmd_family_beta(args) -> Outcome:
    circuit = build_beta_n(args.n)
    payload: Dict[str, Any] = {"n": args.n, "node_count": circuit.size}
    lines: List[str] = []
    write_or_show(circuit, args.output, payload, lines)
    return Outcome(payload, lines)


def cmd_family_identity(args) -> Outcome:
    split = SplitRandom(args.seed).child(REPRO_STREAM, 0, args.n)
    rows = []
    for trial in range(args.trials):
        rng = split.child(trial).rng()
        t = Fraction(rng.randint(-1000, 1000), rng.randint(1, 16))
        u = [Fraction(rng.randint(-1000, 1000), rng.randint(1, 16)) for _ in range(args.n)]
        lhs, rhs = identity_sides(args.n, t, u)
        rows.append({"t": format_scalar(t), "u": [format_scalar(v) for v in u], "holds": lhs == rhs})
    failures = [k for k, row in enumerate(rows) if not row["holds"]]
    payload = {"n": args.n, "trials": args.trials, "failures": failures, "points": rows}
    lines = [f"n={args.n} identity at {args.trials} points: {status(not failures)}"]
    if failures:
        lines.append(f"failing trials: {failures}")
    return Outcome(payload, lines, not failures)


def cmd_family_formula(args) -> Outcome:
    report = build_formula(args.n, seed=args.seed)
    payload: Dict[str, Any] = report.model_dump()
    lines = [f"n={args.n}: {report.constituents} circuits ({report.point_count} identification points), "
             f"total size {C_INFO}{report.total_size}{C_RESET}"]
    ok = True
    if args.growth:
        growth = formula_growth(args.seed)
        payload["growth"] = growth.model_dump()
        ok = growth.passed
        lines.append(f"cubic bound c = {growth.c:.2f} on {growth.check_range}: {status(growth.passed)}")
    return Outcome(payload, lines, ok)


def cmd_family_universal(args) -> Outcome:
    try:
        report = universal_size(args.L, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from e
    return Outcome(report.model_dump(), [f"L={args.L}, n={args.n}: K = {report.point_count}, r = {report.params}"])


# --- lowerbound -------------------------------------------------------------

def lowerbound_settings(args) -> LowerBoundSettings:
    settings = LowerBoundSettings()
    if getattr(args, "ceiling", None) is not None:
        settings.ceiling_n = args.ceiling
    return settings


def cmd_rank_cert(args) -> Outcome:
    certificate = rank_certificate(args.n, args.strategy, seed=args.seed, settings=lowerbound_settings(args))
    lines = [f"n={args.n}: rank {C_INFO}{certificate.rank}{C_RESET} of {2 ** args.n} "
             f"({certificate.strategy}, {certificate.attempts} attempt(s)): {status(certificate.passed)}"]
    return Outcome(certificate.to_json_dict(), lines, certificate.passed)


def cmd_audit(args) -> Outcome:
    report = audit_candidate(load_circuit(args.file), args.n, chart=args.chart, trials=args.trials, seed=args.seed,
                             settings=lowerbound_settings(args))
    ok = report.verdict == AuditVerdict.CONSISTENT_WITH_BOUND
    lines = [f"verdict: {status(ok)} ({report.verdict.value}), m = {report.m}, bound = {report.bound}, "
             f"verified {report.verified}/{report.trials}"]
    if report.detail:
        lines.append(report.detail)
    return Outcome(report.model_dump(mode="json"), lines, ok)


# --- approx -----------------------------------------------------------------

def cmd_approx_eval(args) -> Outcome:
    circuit = load_circuit(args.file)
    inst = load_germ(args.germ, precision=args.prec)
    result = approx_eval(circuit, inst)
    names = [f"x{i + 1}" for i in range(circuit.inputs)]
    payload: Dict[str, Any] = {
        "precision": inst.precision,
        "holomorphic": result.holomorphic,
        "orders": {str(node_id): order for node_id, order in result.orders.items()},
    }
    if result.holomorphic and result.limit is None:
        raise PrecisionExhausted(f"Outputs are known only modulo eps^0 at precision {inst.precision}, raise --prec")
    lines = [f"holomorphic: {status(result.holomorphic)}"]
    if result.holomorphic:
        payload["limit"] = [h.format(names) for h in result.limit]
        payload["tail_zero"] = [t.is_zero_like() for t in result.tail]
        lines += [f"H{k + 1} = {C_INFO}{text}{C_RESET}" for k, text in enumerate(payload["limit"])]
    else:
        poles = {node_id: order for node_id, order in result.orders.items() if order < 0}
        lines.append(f"negative orders: {poles}")
    return Outcome(payload, lines, result.holomorphic)


def cmd_approx_witness(args) -> Outcome:
    table = convergence_witness(load_circuit(args.file), load_germ(args.germ, precision=args.prec), args.kmax)
    lines = [f"H = {C_INFO}{', '.join(table.limit)}{C_RESET}, C = {table.C}"]
    for row in table.rows:
        lines.append(f"  k={row.k:>3} eps={row.eps:>10} deviation={row.deviation if row.ok else 'skipped'}")
    return Outcome(table.model_dump(), lines)


# --- repro ------------------------------------------------------------------

def cmd_repro(args) -> Outcome:
    try:
        results = run_suites(args.suites, seed=args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from e
    lines = []
    for result in results:
        lines.append(f"{C_BOLD}{result.name}{C_RESET} ({result.seconds:.1f} s)")
        for row in result.rows:
            detail = f"  {C_INFO}{row.detail}{C_RESET}" if row.detail else ""
            lines.append(f"  {row.label}: {status(row.passed)}{detail}")
    ok = all(result.passed for result in results)
    payload = {"suites": [result.model_dump(exclude={"seconds"}) for result in results], "pass": ok}
    return Outcome(payload, lines, ok)


INPUT_ARGS = ("file", "first", "second", "domain", "parent_domain", "germ")


def build_parser(settings: AppSettings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=settings.seed, help="Run seed (CIRC_SEED)")
    common.add_argument("--json", action="store_true", default=settings.json_output, help="Emit a JSON report")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(prog="circ", description="Parameterized arithmetic circuit lab")
    parser.add_argument("--version", action="version", version=f"circ {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(sub, name: str, handler: Callable, help_text: str, file: bool = True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            p.add_argument("file", help="Circuit JSON file")
        p.set_defaults(handler=handler)
        return p

    command(commands, "validate", cmd_validate, "Check the structural invariants")
    command(commands, "classify", cmd_classify, "Per-node dependence flags")
    p = command(commands, "eval", cmd_eval, "Exact evaluation at one point")
    p.add_argument("--params", help="Comma-separated parameter values")
    p.add_argument("--inputs", help="Comma-separated input values")
    p = command(commands, "expand", cmd_expand, "Symbolic expansion into rational functions")
    p.add_argument("--budget", type=int, help="Term budget per node (CIRC_EXPAND_BUDGET)")
    p = command(commands, "consistent", cmd_consistent, "Consistency check over a domain")
    p.add_argument("--domain", help="Domain JSON file (default: affine space)")
    p.add_argument("--point", help="Restrict to one comma-separated parameter point")
    p.add_argument("--trials", type=int, help="Probabilistic trials")
    p.add_argument("--mode", choices=("exact", "probabilistic"), default="exact")

    p = command(commands, "join", cmd_join, "Compose two circuits", file=False)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--map", help="Output:target pairs, e.g. 0:0,1:1")
    p.add_argument("--onto", choices=("inputs", "params"), default="inputs")
    p.add_argument("--domain", help="Domain JSON file for the consistency check")
    p.add_argument("-o", "--output", help="Write the circuit here")
    p = command(commands, "reduce", cmd_reduce, "Merge nodes with equal intermediate results")
    p.add_argument("--exact", action="store_true", help="Confirm merges symbolically")
    p.add_argument("--domain", help="Domain JSON file")
    p.add_argument("-o", "--output", help="Write the circuit here")
    p = command(commands, "gc", cmd_gc, "Drop nodes no output depends on")
    p.add_argument("-o", "--output", help="Write the circuit here")
    p = command(commands, "restrict", cmd_restrict, "Re-base a circuit on a sub-domain")
    p.add_argument("--domain", help="Sub-domain JSON file")
    p.add_argument("--point", help="Comma-separated parameter point")
    p.add_argument("--parent-domain", dest="parent_domain", help="Original domain, for the membership check")
    p.add_argument("--mode", choices=("exact", "probabilistic"), default="exact")
    p.add_argument("-o", "--output", help="Write the circuit here")
    command(commands, "cost", cmd_cost, "Non-scalar cost report")

    family = commands.add_parser("family", help="The H / beta family and its eliminant").add_subparsers(
        dest="family_command", required=True)
    p = command(family, "H", cmd_family_h, "Build the H circuit", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--duplicate", action="store_true", help="Emit the factor chain twice")
    p.add_argument("-o", "--output", help="Write the circuit here")
    p = command(family, "beta", cmd_family_beta, "Build beta_n", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output", help="Write the circuit here")
    p = command(family, "verify-identity", cmd_family_identity, "Check the elimination identity", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p = command(family, "formula-size", cmd_family_formula, "Constituent sizes of the formula", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--growth", action="store_true", help="Also fit and check the cubic bound")
    p = command(family, "universal-size", cmd_family_universal, "Point count and dimension for L extra inputs",
                file=False)
    p.add_argument("--L", dest="L", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    lb = commands.add_parser("lb", help="Lower-bound certificate and audit").add_subparsers(
        dest="lb_command", required=True)
    p = command(lb, "rank-cert", cmd_rank_cert, "Exact rank certificate", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="primes")
    p.add_argument("--ceiling", type=int, help="Largest n accepted (CIRC_CEILING_N)")
    p = command(lb, "audit", cmd_audit, "Audit a candidate evaluator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--chart", choices=CHARTS, default="xi")
    p.add_argument("--trials", type=int)
    p.add_argument("--ceiling", type=int)

    approx = commands.add_parser("approx", help="Approximative evaluation along a germ").add_subparsers(
        dest="approx_command", required=True)
    p = command(approx, "eval", cmd_approx_eval, "Evaluate over truncated Laurent series")
    p.add_argument("--germ", required=True, help="Germ JSON file")
    p.add_argument("--prec", type=int, help="Retained terms (CIRC_LAURENT_PRECISION)")
    p = command(approx, "witness", cmd_approx_witness, "Convergence witness table")
    p.add_argument("--germ", required=True, help="Germ JSON file")
    p.add_argument("--prec", type=int)
    p.add_argument("--kmax", type=int, help="Largest k (CIRC_WITNESS_KMAX)")

    p = command(commands, "repro", cmd_repro, "Run the acceptance suites", file=False)
    p.add_argument("suites", nargs="*", metavar="suite",
                   help=f"Any of {', '.join(SUITES)} (default: all)")
    return parser


def check_paths(args) -> List[InputHash]:
    inputs = [getattr(args, name) for name in INPUT_ARGS if getattr(args, name, None)]
    for path in inputs:
        if not pathlib.Path(path).is_file():
            raise UsageError(f"No such file: {path}")
    output = getattr(args, "output", None)
    if output and any(pathlib.Path(output).resolve() == pathlib.Path(path).resolve() for path in inputs):
        raise UsageError(f"Refusing to overwrite input file {output}")
    return [file_hash(path) for path in inputs]


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    settings = AppSettings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.getLogger().setLevel(logging.DEBUG if args.verbose else settings.log_level)
    command = list(argv) if argv is not None else sys.argv[1:]
    started = time.perf_counter()
    try:
        inputs = check_paths(args)
        outcome = args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{C_FAIL}circ: error: {e}{C_RESET}", file=sys.stderr)
        return 2
    except CircuitLabError as e:
        logger.debug("Command failed", exc_info=True)
        print(f"{C_FAIL}{type(e).__name__}: {e}{C_RESET}", file=sys.stderr)
        return 1
    except Exception as e:
        logger.exception(f"Unexpected error in {command}")
        print(f"{C_FAIL}{type(e).__name__}: {e}{C_RESET}", file=sys.stderr)
        return 1

    if args.json:
        manifest = RunManifest(command=command, seed=args.seed, inputs=inputs,
                               wall_time=time.perf_counter() - started, result_digest=result_digest(outcome.payload))
        print(json.dumps({**outcome.payload, "manifest": manifest.model_dump()}, indent=2, default=str))
    else:
        for line in outcome.lines:
            print(line)
    return 0 if outcome.ok else 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
