#!filepath: repro_suites.py
"""
Acceptance suites with pinned seeds. Each suite returns table rows; `circ repro`
runs them in parallel and prints one aggregated table.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel

from algebra.errors import CircuitLabError
from algebra.sparse_poly import SparsePoly
from approx.catalog import epsilon_germ, linear_tail_circuit, linear_tail_germ, pole_circuit, square_limit_circuit
from approx.errors import NotHolomorphic
from approx.evaluate import approx_eval, represents
from approx.witness import convergence_witness
from circuit_ir.domain import PointDomain
from circuit_ir.random_circuits import random_circuit
from cost_model.report import cost
from family.builders import build_beta_n, build_H
from family.eliminant import eval_F, verify_elimination_identity
from family.formula import formula_growth
from family.identification import find_identification_points, identification_points
from lowerbound.audit import AuditVerdict, audit_candidate
from lowerbound.certificate import rank_certificate
from lowerbound.evaluators import FORMS, XI_FORMS, naive_evaluator, xi_evaluator
from semantics.errors import DivisionByZero, FingerprintExhausted
from semantics.evaluate import eval_point
from semantics.fingerprint import equal_results, fingerprint
from semantics.sampling import REPRO_STREAM, SplitRandom, random_integers
from transforms.errors import InconsistentJoin
from transforms.gc import garbage_collect
from transforms.join import join
from transforms.reduce import reduce
from transforms.restrict import restrict

logger = logging.getLogger(__name__)


class SuiteRow(BaseModel):
    suite: str
    label: str
    passed: bool
    detail: str = ""


class SuiteResult(BaseModel):
    name: str
    rows: List[SuiteRow]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def _random_rational(rng, bound: int = 1000, denominator: int = 16) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, denominator))


def identity_suite(seed: int) -> List[SuiteRow]:
    failures = []
    for n in range(1, 7):
        for trial in range(20):
            rng = SplitRandom(seed).child(REPRO_STREAM, 1, n, trial).rng()
            t = _random_rational(rng)
            u = [_random_rational(rng) for _ in range(n)]
            if not verify_elimination_identity(n, t, u):
                failures.append((n, trial))
    return [SuiteRow(suite="identity", label="n=1..6 identity", passed=not failures,
                     detail=f"failing (n, trial): {failures}" if failures else "120 points")]


def cost_suite(seed: int) -> List[SuiteRow]:
    bad = [n for n in range(1, 13) if cost(build_H(n)).essential_mults != n - 1]
    return [SuiteRow(suite="cost", label="n=1..12 essential mults = n-1", passed=not bad,
                     detail=f"mismatch at {bad}" if bad else "")]


def rank_suite(seed: int) -> List[SuiteRow]:
    rows = []
    for n in range(1, 8):
        try:
            certificate = rank_certificate(n, "primes")
            rows.append(SuiteRow(suite="rank", label=f"n={n} rank", passed=certificate.passed,
                                 detail=f"rank {certificate.rank}"))
        except CircuitLabError as e:
            rows.append(SuiteRow(suite="rank", label=f"n={n} rank", passed=False, detail=str(e)))
    return rows


def lambda_suite(seed: int) -> List[SuiteRow]:
    rows = []
    for n in range(1, 7):
        expected = SparsePoly.from_univariate([Fraction(1)])
        for j in range(2 ** n):
            expected = expected * SparsePoly.from_univariate([Fraction(-j), Fraction(1)])
        ok = True
        for trial in range(10):
            rng = SplitRandom(seed).child(REPRO_STREAM, 4, n, trial).rng()
            if eval_F(n, 0, random_integers(rng, n, 1000)) != expected:
                ok = False
                break
        rows.append(SuiteRow(suite="lambda", label=f"n={n} F(0,u,Y)", passed=ok))
    return rows


def size_suite(seed: int) -> List[SuiteRow]:
    counts = {n: build_beta_n(n).size for n in range(1, 13)}
    second = [counts[n + 1] - 2 * counts[n] + counts[n - 1] for n in range(2, 12)]
    growth = formula_growth(seed)
    return [
        SuiteRow(suite="size", label="beta_n affine", passed=all(d == 0 for d in second),
                 detail=f"sizes {counts[1]}..{counts[12]}"),
        SuiteRow(suite="size", label="formula cubic", passed=growth.passed, detail=f"c = {growth.c:.2f}"),
    ]


def _sample_point(rng, circuit, bound: int = 50):
    return random_integers(rng, circuit.params, bound), random_integers(rng, circuit.inputs, bound)


def _join_law_holds(g1, g2, joined, split: SplitRandom, points: int = 10) -> bool:
    for k in range(points):
        rng = split.child(k).rng()
        u, x = _sample_point(rng, g1)
        try:
            middle = eval_point(g1, u, x).outputs
            expected = eval_point(g2, u, middle).outputs
            actual = eval_point(joined, u, x).outputs
        except DivisionByZero:
            continue
        if expected != actual:
            return False
    return True


def transforms_suite(seed: int) -> List[SuiteRow]:
    split = SplitRandom(seed).child(REPRO_STREAM, 6)
    rewrite_failures = join_failures = commute_failures = 0
    for i in range(200):
        rng = split.child(0, i).rng()
        c = random_circuit(rng, rng.randint(0, 3), rng.randint(1, 3), rng.randint(5, 40))
        try:
            reference = fingerprint(c, seed)
            for transformed in (reduce(c, seed=seed), garbage_collect(c)):
                if transformed.size > c.size or not equal_results(reference, fingerprint(transformed, seed)):
                    rewrite_failures += 1
        except FingerprintExhausted:
            continue
    for i in range(50):
        rng = split.child(1, i).rng()
        params = rng.randint(0, 2)
        g1 = random_circuit(rng, params, rng.randint(1, 3), rng.randint(5, 20))
        g2 = random_circuit(rng, params, len(g1.outputs), rng.randint(5, 20))
        try:
            joined = join(g1, g2, check_consistency=False)
        except InconsistentJoin:
            continue
        if not _join_law_holds(g1, g2, joined, split.child(2, i)):
            join_failures += 1
    for i in range(50):
        rng = split.child(3, i).rng()
        c = random_circuit(rng, rng.randint(1, 3), rng.randint(1, 2), rng.randint(5, 30))
        sub = PointDomain(random_integers(rng, c.params, 100))
        try:
            first = reduce(restrict(c, sub, mode="probabilistic", seed=seed).circuit, domain=sub, seed=seed)
            second = restrict(reduce(c, seed=seed), sub, mode="probabilistic", seed=seed).circuit
            if not equal_results(fingerprint(first, seed, domain=sub), fingerprint(second, seed, domain=sub)):
                commute_failures += 1
        except FingerprintExhausted:
            continue
    return [
        SuiteRow(suite="transforms", label="reduce/gc preserve results", passed=rewrite_failures == 0,
                 detail=f"{rewrite_failures} failures / 200"),
        SuiteRow(suite="transforms", label="join composition law", passed=join_failures == 0,
                 detail=f"{join_failures} failures / 50"),
        SuiteRow(suite="transforms", label="reduce and restrict commute", passed=commute_failures == 0,
                 detail=f"{commute_failures} failures / 50"),
    ]


def audit_suite(seed: int) -> List[SuiteRow]:
    rows = []
    for n in range(1, 4):
        points = identification_points(n, seed)
        for form in XI_FORMS:
            report = audit_candidate(xi_evaluator(n, points, form), n, chart="xi", seed=seed)
            ok = report.verdict == AuditVerdict.CONSISTENT_WITH_BOUND and report.m == 2 ** n
            rows.append(SuiteRow(suite="audit", label=f"n={n} xi {form} evaluator", passed=ok,
                                 detail=f"{report.verdict.value}, m={report.m}"))
    for n in range(1, 6):
        for form in FORMS:
            report = audit_candidate(naive_evaluator(n, form), n, chart="coefficients", seed=seed)
            ok = report.verdict == AuditVerdict.CONSISTENT_WITH_BOUND and report.m == 2 ** n
            rows.append(SuiteRow(suite="audit", label=f"n={n} {form} evaluator", passed=ok,
                                 detail=f"{report.verdict.value}, m={report.m}"))
    return rows


def approx_suite(seed: int) -> List[SuiteRow]:
    x = SparsePoly.variable(1, 0)
    square = approx_eval(square_limit_circuit(), epsilon_germ())
    square_ok = square.limit == (x * x,) and all(t.is_zero_like() for t in square.tail)

    table = convergence_witness(linear_tail_circuit(), linear_tail_germ(), 10)
    ratios_ok = table.limit == [(x * x).format(["x1"])] and all(r == "1/2" for r in table.ratios[:9])

    try:
        represents(pole_circuit(), epsilon_germ())
        pole_ok, pole_detail = False, "no pole reported"
    except NotHolomorphic as e:
        pole_ok, pole_detail = e.order == -1, f"order {e.order}"
    return [
        SuiteRow(suite="approx", label="X^2 limit, zero tail", passed=square_ok),
        SuiteRow(suite="approx", label="linear tail ratio 1/2", passed=ratios_ok, detail=f"C = {table.C}"),
        SuiteRow(suite="approx", label="pole order -1", passed=pole_ok, detail=pole_detail),
    ]


def identification_suite(seed: int) -> List[SuiteRow]:
    rows = []
    for n in range(1, 5):
        try:
            points, report = find_identification_points(n, seed, trials=1000)
            rows.append(SuiteRow(suite="identification", label=f"n={n} identification", passed=report.passed,
                                 detail=f"{len(points)} points, {report.collisions} collisions"))
        except CircuitLabError as e:
            rows.append(SuiteRow(suite="identification", label=f"n={n} identification", passed=False,
                                 detail=str(e)))
    return rows


SUITES: Dict[str, Callable[[int], List[SuiteRow]]] = {
    "identity": identity_suite,
    "cost": cost_suite,
    "rank": rank_suite,
    "lambda": lambda_suite,
    "size": size_suite,
    "transforms": transforms_suite,
    "audit": audit_suite,
    "approx": approx_suite,
    "identification": identification_suite,
}


def run_suites(names: Optional[Sequence[str]] = None, seed: int = 0, workers: int = 4) -> List[SuiteResult]:
    """Runs the named suites (all by default) in parallel; results keep the requested order."""
    names = list(names) if names else list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"Unknown suite(s) {unknown}, expected some of {list(SUITES)}")

    def run(name: str) -> SuiteResult:
        started = time.perf_counter()
        try:
            rows = SUITES[name](seed)
        except CircuitLabError as e:
            logger.error(f"Suite {name} stopped: {e}")
            rows = [SuiteRow(suite=name, label=name, passed=False, detail=str(e))]
        return SuiteResult(name=name, rows=rows, seconds=time.perf_counter() - started)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        return list(executor.map(run, names))
