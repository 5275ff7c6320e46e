#!filepath: approx/evaluate.py
"""
Evaluation of a circuit along a parameter germ u(eps).

Every node value is a truncated Laurent series in eps whose coefficients are
polynomials in the inputs X. Divisions are only allowed at parameter nodes,
where the divisor's coefficients are constants and long division applies.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from algebra.errors import ArityMismatch, PrecisionExhausted
from algebra.laurent import TruncatedLaurent, laurent_div
from algebra.sparse_poly import SparsePoly
from circuit_ir.circuit import Circuit, Op
from circuit_ir.classify import classify
from circuit_ir.validate import require_valid
from semantics.errors import DivisionByZero
from semantics.evaluate import run_circuit

from .errors import NonParameterDivision, NotHolomorphic
from .instance import ApproxInstance

logger = logging.getLogger(__name__)


@dataclass
class ApproxResult:
    """
    Output series of one approximative evaluation. When every output is
    holomorphic, limit holds the eps^0 coefficients H and tail the series
    with G = H + eps * tail.
    """
    outputs: Tuple[TruncatedLaurent, ...]
    orders: Dict[int, int]
    holomorphic: bool
    limit: Optional[Tuple[SparsePoly, ...]] = None
    tail: Optional[Tuple[TruncatedLaurent, ...]] = None


def require_parameter_divisions(circuit: Circuit) -> None:
    """Raises NonParameterDivision at the first division that depends on an input."""
    table = classify(circuit)
    for node in circuit.nodes:
        if node.op == Op.DIV and not table[node.id].is_parameter_node:
            raise NonParameterDivision(node.id)


def _tail(series: TruncatedLaurent, zero: SparsePoly) -> TruncatedLaurent:
    absolute = series.absolute_precision
    coeffs = [series.coefficient(k) for k in range(1, absolute)]
    return TruncatedLaurent(0, coeffs, zero) if coeffs else TruncatedLaurent(max(absolute - 1, 0), [], zero)


def approx_eval(circuit: Circuit, inst: ApproxInstance, check: bool = True) -> ApproxResult:
    """
    Raises:
        NonParameterDivision: a division node depends on an input.
        PrecisionExhausted: a divisor is zero at the retained precision (carries the node id).
        InstanceViolation: the germ does not lie on the domain (with check=True).
    """
    require_valid(circuit)
    if inst.params != circuit.params:
        raise ArityMismatch(circuit.params, inst.params)
    require_parameter_divisions(circuit)
    if check:
        inst.check()

    n = circuit.inputs
    zero = SparsePoly.zero(n)
    precision = inst.precision

    def lift(value) -> TruncatedLaurent:
        return TruncatedLaurent.constant(SparsePoly.constant(n, value) if not isinstance(value, SparsePoly) else value,
                                         precision, zero)

    params = [entry.map_coefficients(lambda c: SparsePoly.constant(n, c), zero) for entry in inst.entries]
    inputs = [lift(SparsePoly.variable(n, i)) for i in range(n)]

    def divide(node, a, b):
        try:
            return laurent_div(a, b)
        except PrecisionExhausted as e:
            raise PrecisionExhausted(f"Node {node.id}: {e}", node=node.id) from None

    values = run_circuit(circuit, params, inputs, scalar=lift, divide=divide)
    orders = {node_id: value.order for node_id, value in values.items()}
    outputs = tuple(values[o] for o in circuit.outputs)
    holomorphic = all(s.order >= 0 for s in outputs)
    result = ApproxResult(outputs, orders, holomorphic)
    if holomorphic and all(s.absolute_precision > 0 for s in outputs):
        result.limit = tuple(s.coefficient(0) for s in outputs)
        result.tail = tuple(_tail(s, zero) for s in outputs)
    logger.debug(f"Approximative output orders: {[s.order for s in outputs]}")
    return result


def _ancestors(circuit: Circuit, node_id: int) -> Set[int]:
    seen = {node_id}
    stack = [node_id]
    while stack:
        for arg in circuit.node(stack.pop()).args:
            if arg not in seen:
                seen.add(arg)
                stack.append(arg)
    return seen


def represents(circuit: Circuit, inst: ApproxInstance) -> Tuple[SparsePoly, ...]:
    """
    The polynomials H represented along the germ, one per output.

    Raises:
        NotHolomorphic: some output has a negative order.
        PrecisionExhausted: an output is known only below eps^0.
    """
    result = approx_eval(circuit, inst)
    if not result.holomorphic:
        position, series = min(enumerate(result.outputs), key=lambda item: item[1].order)
        node_id = circuit.outputs[position]
        ancestors = _ancestors(circuit, node_id)
        first = next((node.id for node in circuit.nodes
                      if node.id in ancestors and result.orders[node.id] < 0), None)
        raise NotHolomorphic(series.order, node_id, first)
    if result.limit is None:
        raise PrecisionExhausted("Outputs are not known up to eps^0, raise the precision")
    return result.limit


def eval_in_x(circuit: Circuit, params) -> Optional[List[SparsePoly]]:
    """
    Outputs as polynomials in X at a scalar parameter point, or None when a
    parameter-node divisor vanishes there.
    """
    n = circuit.inputs
    inputs = [SparsePoly.variable(n, i) for i in range(n)]
    lifted = [SparsePoly.constant(n, v) for v in params]

    def divide(node, a, b):
        if b.is_zero():
            raise DivisionByZero(node.id)
        if not b.is_constant():
            raise NonParameterDivision(node.id)
        return a / b.constant_value()

    try:
        values = run_circuit(circuit, lifted, inputs, scalar=lambda v: SparsePoly.constant(n, v), divide=divide)
    except DivisionByZero:
        return None
    return [values[o] for o in circuit.outputs]
