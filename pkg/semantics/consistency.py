#!filepath: semantics/consistency.py
import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from algebra.errors import ArityMismatch
from algebra.ratfunc import RatFunc
from algebra.sparse_poly import SparsePoly
from circuit_ir.circuit import Circuit, Op
from circuit_ir.classify import division_nodes, is_totally_division_free
from circuit_ir.domain import Chart, ParameterDomain
from circuit_ir.validate import require_valid
from .config import SemanticsSettings
from .errors import BudgetExceeded
from .evaluate import eval_partial, run_partial
from .sampling import CONSISTENCY_STREAM, SplitRandom, random_integers

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    UNDECIDED = "undecided"


class ConsistencyResult(BaseModel):
    """
    Pydantic model for a consistency verdict. `node` is the first failing
    division in sequence order; `failing_nodes` lists every division whose
    divisor vanishes identically (inconsistent) or only sometimes (undecided).
    """
    verdict: Verdict
    mode: str = Field(..., description="exact or probabilistic")
    node: Optional[int] = None
    failing_nodes: List[int] = Field(default_factory=list)
    trials: int = 0
    detail: str = ""

    @property
    def consistent(self) -> bool:
        return self.verdict == Verdict.CONSISTENT


def _embed(f: RatFunc, nvars: int) -> RatFunc:
    positions = list(range(f.nvars))
    return RatFunc(f.num.embed(nvars, positions), f.den.embed(nvars, positions), normalize=False)


def exact_divisor_zeros(circuit: Circuit, chart: Chart, budget: int) -> List[int]:
    """
    Pulls the circuit back along the chart and returns the divisions whose
    divisor is the identically zero function there.

    Raises:
        BudgetExceeded: the pulled-back expansion is too large.
    """
    nvars = chart.source_dim + circuit.inputs
    params = [_embed(f, nvars) for f in chart.functions]
    inputs = [RatFunc.from_poly(SparsePoly.variable(nvars, chart.source_dim + i)) for i in range(circuit.inputs)]
    failing: List[int] = []

    def is_zero(value: RatFunc) -> bool:
        return value.is_zero()

    def check_budget(node, value):
        terms = value.term_count()
        if terms > budget:
            raise BudgetExceeded(node.id, terms, budget)

    values = run_partial(circuit, params, inputs, scalar=lambda v: RatFunc.constant(nvars, v),
                         is_zero=is_zero, on_value=check_budget)
    for node in circuit.nodes:
        if node.op == Op.DIV and values[node.id] is None:
            divisor = values[node.args[1]]
            dividend = values[node.args[0]]
            if divisor is not None and dividend is not None:
                failing.append(node.id)
    return failing


def _probabilistic(circuit: Circuit, domain: ParameterDomain, trials: int, seed: int,
                   settings: SemanticsSettings) -> ConsistencyResult:
    divisions = division_nodes(circuit)
    split = SplitRandom(seed).child(CONSISTENCY_STREAM)
    bound = settings.sample_bound

    def trial(t: int) -> Dict[int, Optional[bool]]:
        rng = split.child(t).rng()
        u = domain.sample(rng, bound)
        x = random_integers(rng, circuit.inputs, bound)
        values = eval_partial(circuit, u, x)
        pattern = {}
        for d in divisions:
            divisor = values[circuit.node(d).args[1]]
            pattern[d] = None if divisor is None else divisor == 0
        return pattern

    with ThreadPoolExecutor(max_workers=settings.workers) as executor:
        patterns = list(executor.map(trial, range(trials)))

    always, sometimes = [], []
    for d in divisions:
        seen = [p[d] for p in patterns if p[d] is not None]
        zeros = sum(1 for z in seen if z)
        if seen and zeros == len(seen):
            always.append(d)
        elif zeros:
            sometimes.append(d)
    if always:
        return ConsistencyResult(verdict=Verdict.INCONSISTENT, mode="probabilistic", node=always[0],
                                 failing_nodes=always, trials=trials,
                                 detail=f"divisor of node {always[0]} vanished at every sample")
    if sometimes:
        return ConsistencyResult(verdict=Verdict.UNDECIDED, mode="probabilistic", node=sometimes[0],
                                 failing_nodes=sometimes, trials=trials,
                                 detail="some divisors vanish at part of the samples")
    return ConsistencyResult(verdict=Verdict.CONSISTENT, mode="probabilistic", trials=trials)


def consistency_check(circuit: Circuit, domain: ParameterDomain, mode: str = "exact", trials: Optional[int] = None,
                      seed: int = 0, budget: Optional[int] = None) -> ConsistencyResult:
    """
    Decides whether the canonical evaluation of the circuit over the domain
    divides by a function vanishing identically on the domain.

    Exact mode pulls every divisor back along the domain's chart; domains
    without a chart (or expansions over budget) fall back to probabilistic
    mode, which samples `trials` domain points.

    Raises:
        EmptyDomainSuspected: the domain yields no sample points.
    """
    require_valid(circuit)
    if domain.params != circuit.params:
        raise ArityMismatch(circuit.params, domain.params)
    settings = SemanticsSettings()
    trials = trials if trials is not None else settings.consistency_trials
    if is_totally_division_free(circuit):
        return ConsistencyResult(verdict=Verdict.CONSISTENT, mode=mode, detail="totally division-free")

    if mode == "exact":
        chart = domain.chart()
        if chart is None:
            logger.info(f"No chart for the {domain.kind} domain, falling back to probabilistic mode")
        else:
            try:
                failing = exact_divisor_zeros(circuit, chart, budget if budget is not None else settings.expand_budget)
            except BudgetExceeded as e:
                logger.warning(f"{e}; falling back to probabilistic mode")
            else:
                if failing:
                    return ConsistencyResult(verdict=Verdict.INCONSISTENT, mode="exact", node=failing[0],
                                             failing_nodes=failing,
                                             detail=f"divisor of node {failing[0]} is zero on the domain")
                return ConsistencyResult(verdict=Verdict.CONSISTENT, mode="exact")
    elif mode != "probabilistic":
        raise ValueError(f"Unknown consistency mode '{mode}'")
    return _probabilistic(circuit, domain, trials, seed, settings)
