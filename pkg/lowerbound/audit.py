#!filepath: lowerbound/audit.py
"""
Audit of candidate circuits claimed to evaluate the eliminant.

The claim is checked on seeded samples (t, u): the candidate's parameters are
set through a chart from (t, u), and its single output, evaluated at sampled
Y values, must equal prod_eps (Y - H(t, u, eps)). A verified candidate with
fewer than 2^n essential parameters is flagged as a violation.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, Field

from algebra.scalar import Scalar
from circuit_ir.circuit import Circuit
from circuit_ir.classify import classify, is_essentially_division_free
from circuit_ir.validate import validate
from cost_model.report import cost
from family.builders import roots
from family.config import FamilySettings
from family.eliminant import eval_F
from family.identification import Xi, identification_points, point_count
from semantics.config import SemanticsSettings
from semantics.evaluate import eval_point
from semantics.sampling import AUDIT_STREAM, SplitRandom, random_integers

from .config import LowerBoundSettings

logger = logging.getLogger(__name__)

CHARTS = ("coefficients", "xi", "preimage", "family")


class AuditVerdict(str, Enum):
    CONSISTENT_WITH_BOUND = "consistent_with_bound"
    VIOLATION = "violation"
    NOT_AN_EVALUATOR = "not_an_evaluator"
    NOT_ESSENTIALLY_DIVISION_FREE = "not_essentially_division_free"


class AuditReport(BaseModel):
    """
    Pydantic model for `circ lb audit --json`.
    """
    n: int
    chart: str
    verdict: AuditVerdict
    bound: int = Field(..., description="2^n, the required number of essential parameters")
    trials: int
    verified: int = Field(0, description="Trials where the claim held at every sampled Y")
    skipped: int = Field(0, description="Trials where a division failed at the sample")
    m: Optional[int] = Field(None, description="Essential parameter count of the candidate")
    essential_mults: Optional[int] = None
    param_mults: Optional[int] = None
    power: Optional[int] = Field(None, description="Exponent e with output = F^e (family chart)")
    failing_trial: Optional[int] = None
    detail: str = ""


def chart_arity(chart: str, n: int) -> int:
    return {"coefficients": 2 ** n, "xi": point_count(n), "preimage": n + 1, "family": 2 * n + 1}[chart]


def chart_map(chart: str, n: int, seed: int = 0) -> Callable[[Scalar, Sequence[Scalar]], Tuple[Scalar, ...]]:
    """
    Maps a preimage (t, u) to the candidate's parameter vector.

    coefficients: phi_1..phi_{2^n} of F(t, u, Y); xi: the Xi encoding at the
    seeded identification points; preimage: (t, u); family: (S, T, U) on the
    fibre S = 0.
    """
    if chart not in CHARTS:
        raise ValueError(f"Unknown chart '{chart}', expected one of {CHARTS}")
    if chart == "coefficients":
        settings = FamilySettings()
        settings.f_ceiling = max(settings.f_ceiling, n)

        def coefficients(t, u):
            dense = eval_F(n, t, u, settings).univariate_coefficients()
            return tuple(dense[2 ** n - k] for k in range(1, 2 ** n + 1))
        return coefficients
    if chart == "xi":
        points = identification_points(n, seed)
        return lambda t, u: Xi(n, points, t, u)
    if chart == "preimage":
        return lambda t, u: (t,) + tuple(u)
    return lambda t, u: (Fraction(0),) * n + (t,) + tuple(u)


def _eliminant_at(n: int, t: Scalar, u: Sequence[Scalar], y: Scalar) -> Scalar:
    value = Fraction(1)
    for root in roots(n, t, u):
        value = value * (y - root)
    return value


def audit_candidate(circuit: Circuit, n: int, chart: str = "xi", trials: Optional[int] = None,
                    seed: int = 0, settings: Optional[LowerBoundSettings] = None) -> AuditReport:
    """
    Never raises on a bad candidate; the verdict says what went wrong.

    The default chart is the image domain of Xi: parameter k is H(t, u, xi_k)
    at identification_points(n, seed), so candidates must be built for the
    same seed (see xi_evaluator).
    """
    settings = settings or LowerBoundSettings()
    trials = trials if trials is not None else settings.audit_trials
    bound = 2 ** n
    base = dict(n=n, chart=chart, bound=bound, trials=trials)

    report = validate(circuit)
    if not report.structurally_sound:
        return AuditReport(verdict=AuditVerdict.NOT_AN_EVALUATOR, detail=f"invalid circuit: {report.kinds()}", **base)
    expected_params = chart_arity(chart, n)
    if (circuit.params, circuit.inputs, len(circuit.outputs)) != (expected_params, 1, 1):
        detail = (f"expected {expected_params} params, 1 input and 1 output, got {circuit.params} params, "
                  f"{circuit.inputs} inputs and {len(circuit.outputs)} outputs")
        return AuditReport(verdict=AuditVerdict.NOT_AN_EVALUATOR, detail=detail, **base)
    table = classify(circuit)
    if not is_essentially_division_free(circuit, table):
        return AuditReport(verdict=AuditVerdict.NOT_ESSENTIALLY_DIVISION_FREE,
                           detail="a division has an input-dependent divisor", **base)

    to_params = chart_map(chart, n, seed)
    split = SplitRandom(seed).child(AUDIT_STREAM)
    sample_bound = SemanticsSettings().sample_bound
    max_power = settings.max_power if chart == "family" else 1

    def trial(index: int) -> Optional[Set[int]]:
        """Exponents e consistent with this sample, or None when a division failed."""
        rng = split.child(index).rng()
        t = random_integers(rng, 1, sample_bound)[0]
        u = random_integers(rng, n, sample_bound)
        params = to_params(t, u)
        powers = set(range(1, max_power + 1))
        for y in random_integers(rng, settings.audit_y_points, sample_bound):
            trace = eval_point(circuit, params, [y], raise_on_failure=False)
            if trace.outputs is None:
                return None
            value = trace.outputs[0]
            target = _eliminant_at(n, t, u, y)
            powers = {e for e in powers if value == target ** e}
            if not powers:
                break
        return powers

    with ThreadPoolExecutor(max_workers=SemanticsSettings().workers) as executor:
        outcomes: List[Optional[Set[int]]] = list(executor.map(trial, range(trials)))

    skipped = sum(1 for o in outcomes if o is None)
    surviving = set(range(1, max_power + 1))
    for index, outcome in enumerate(outcomes):
        if outcome is None:
            continue
        surviving &= outcome
        if not surviving:
            logger.info(f"Candidate fails the eliminant claim at trial {index}")
            return AuditReport(verdict=AuditVerdict.NOT_AN_EVALUATOR, skipped=skipped, failing_trial=index,
                               detail="output differs from the eliminant at a sample", **base)
    verified = trials - skipped
    if verified == 0:
        return AuditReport(verdict=AuditVerdict.NOT_AN_EVALUATOR, skipped=skipped,
                           detail="no sample could be evaluated", **base)

    costs = cost(circuit)
    power = min(surviving) if chart == "family" else None
    verdict = AuditVerdict.CONSISTENT_WITH_BOUND
    if costs.essential_param_count < bound:
        logger.error(f"Verified evaluator for n={n} has only {costs.essential_param_count} essential parameters, "
                     f"below {bound}")
        verdict = AuditVerdict.VIOLATION
    return AuditReport(verdict=verdict, verified=verified, skipped=skipped, m=costs.essential_param_count,
                       essential_mults=costs.essential_mults, param_mults=costs.param_mults, power=power, **base)
