#!filepath: transforms/restrict.py
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from algebra.errors import ArityMismatch
from circuit_ir.circuit import Circuit
from circuit_ir.domain import ParameterDomain
from circuit_ir.validate import require_valid
from semantics.config import SemanticsSettings
from semantics.consistency import ConsistencyResult, Verdict, consistency_check
from semantics.sampling import MEMBERSHIP_STREAM, SplitRandom

logger = logging.getLogger(__name__)

MEMBERSHIP_SAMPLES = 4


@dataclass
class RestrictionResult:
    """
    The same DAG over a new domain, with its consistency verdict. On an
    inconsistent verdict the failing divisions are the candidates for an
    approximative replacement.
    """
    circuit: Circuit
    domain: ParameterDomain
    verdict: ConsistencyResult
    approx_candidates: List[int] = field(default_factory=list)
    membership_ok: Optional[bool] = None

    @property
    def consistent(self) -> bool:
        return self.verdict.verdict == Verdict.CONSISTENT


def check_membership(sub: ParameterDomain, parent: ParameterDomain, seed: int = 0,
                     samples: int = MEMBERSHIP_SAMPLES) -> Optional[bool]:
    """Samples points of `sub` and tests them against `parent`; None when the parent cannot decide."""
    split = SplitRandom(seed).child(MEMBERSHIP_STREAM)
    bound = SemanticsSettings().sample_bound
    undecided = False
    for i in range(samples):
        point = sub.sample(split.child(i).rng(), bound)
        verdict = parent.contains(point)
        if verdict is None:
            undecided = True
        elif not verdict:
            logger.warning(f"Sampled point {i} of the restricted domain lies outside the original domain")
            return False
    return None if undecided else True


def restrict(circuit: Circuit, sub: ParameterDomain, domain: Optional[ParameterDomain] = None,
             mode: str = "exact", seed: int = 0) -> RestrictionResult:
    """
    Re-bases the circuit on the sub-domain and re-runs the consistency check.

    When the original domain is given, sampled points of `sub` are checked to
    lie in it (membership_ok).
    """
    require_valid(circuit)
    if sub.params != circuit.params:
        raise ArityMismatch(circuit.params, sub.params)
    membership = check_membership(sub, domain, seed) if domain is not None else None
    verdict = consistency_check(circuit, sub, mode=mode, seed=seed)
    candidates = list(verdict.failing_nodes) if verdict.verdict == Verdict.INCONSISTENT else []
    if candidates:
        logger.info(f"Restriction is inconsistent; approximation candidates: {candidates}")
    return RestrictionResult(circuit, sub, verdict, candidates, membership)
