#!filepath: approx/witness.py
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from algebra.scalar import format_scalar, scalar_magnitude
from algebra.sparse_poly import SparsePoly
from circuit_ir.circuit import Circuit
from semantics.config import SemanticsSettings

from .config import ApproxSettings
from .errors import WitnessExhausted
from .evaluate import eval_in_x, represents
from .instance import ApproxInstance

logger = logging.getLogger(__name__)


class WitnessRow(BaseModel):
    k: int
    eps: str
    ok: bool = Field(..., description="False when a divisor vanished at u(eps_k)")
    deviation: Optional[str] = Field(None, description="Largest |coefficient| of G(u(eps_k)) - H")
    outputs: List[str] = Field(default_factory=list)


class WitnessTable(BaseModel):
    """
    Pydantic model for `circ approx witness --json`. C is the smallest
    constant with deviation(k) <= C * eps_k on every evaluated row.
    """
    limit: List[str]
    rows: List[WitnessRow]
    C: str
    ratios: List[Optional[str]] = Field(default_factory=list, description="deviation(k+1) / deviation(k)")
    skipped: List[int] = Field(default_factory=list)


def deviation(values: Sequence[SparsePoly], limit: Sequence[SparsePoly]) -> Fraction:
    worst = Fraction(0)
    for g, h in zip(values, limit):
        for _, coefficient in (g - h).items():
            worst = max(worst, scalar_magnitude(coefficient))
    return worst


def convergence_witness(circuit: Circuit, inst: ApproxInstance, k_max: Optional[int] = None) -> WitnessTable:
    """
    Exact evaluations at eps_k = 2^-k for k = 1..k_max, compared with the
    represented limit H. A germ without eps dependence yields a single row.

    Raises:
        NotHolomorphic: the circuit does not represent a polynomial along the germ.
        WitnessExhausted: evaluation failed at every eps_k.
    """
    k_max = k_max if k_max is not None else ApproxSettings().witness_kmax
    limit = represents(circuit, inst)
    ks = [1] if inst.is_constant() else list(range(1, k_max + 1))
    names = [f"x{i + 1}" for i in range(circuit.inputs)]

    def row(k: int) -> Tuple[WitnessRow, Optional[Fraction]]:
        eps = Fraction(1, 2 ** k)
        point = [entry.evaluate_at(eps) for entry in inst.entries]
        values = eval_in_x(circuit, point)
        if values is None:
            logger.info(f"Evaluation fails at eps_{k}, skipping the row")
            return WitnessRow(k=k, eps=format_scalar(eps), ok=False), None
        dev = deviation(values, limit)
        return WitnessRow(k=k, eps=format_scalar(eps), ok=True, deviation=format_scalar(dev),
                          outputs=[v.format(names) for v in values]), dev

    with ThreadPoolExecutor(max_workers=SemanticsSettings().workers) as executor:
        results = list(executor.map(row, ks))
    if all(dev is None for _, dev in results):
        raise WitnessExhausted(ks[-1])

    constant = max((dev * 2 ** k for k, (_, dev) in zip(ks, results) if dev is not None), default=Fraction(0))
    ratios = []
    for (_, a), (_, b) in zip(results, results[1:]):
        ratios.append(format_scalar(b / a) if a and b is not None else None)
    return WitnessTable(limit=[h.format(names) for h in limit], rows=[r for r, _ in results],
                        C=format_scalar(constant), ratios=ratios,
                        skipped=[k for k, (_, dev) in zip(ks, results) if dev is None])
