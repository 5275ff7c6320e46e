#!filepath: semantics/evaluate.py
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from algebra.errors import ArityMismatch
from algebra.scalar import Scalar, to_scalar
from circuit_ir.circuit import Circuit, Node, Op
from circuit_ir.validate import require_valid
from .errors import DivisionByZero

logger = logging.getLogger(__name__)

Divide = Callable[[Node, Any, Any], Any]


@dataclass
class EvalTrace:
    """Node values of one evaluation; failure_site is set iff evaluation stopped at a division."""
    values: Dict[int, Any] = field(default_factory=dict)
    outputs: Optional[Tuple[Any, ...]] = None
    failure_site: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.failure_site is None


def run_circuit(circuit: Circuit, params: Sequence[Any], inputs: Sequence[Any],
                scalar: Callable[[Scalar], Any] = None, divide: Divide = None,
                on_value: Callable[[Node, Any], None] = None, values: Dict[int, Any] = None) -> Dict[int, Any]:
    """
    Evaluates every node in sequence order over any ring.

    Args:
        params / inputs: leaf values, indexed by parameter / input index - 1.
        scalar: lifts a scalar label into the ring (identity by default).
        divide: division hook called as divide(node, a, b); plain a / b by default.
        on_value: called after each node value is computed.
        values: dict to fill; partially filled on error.
    """
    values = {} if values is None else values
    for node in circuit.nodes:
        op = node.op
        if op == Op.SCALAR:
            value = scalar(node.value) if scalar else node.value
        elif op == Op.PARAM:
            value = params[node.index - 1]
        elif op == Op.INPUT:
            value = inputs[node.index - 1]
        else:
            a = values[node.args[0]]
            b = values[node.args[1]]
            if op == Op.ADD:
                value = a + b
            elif op == Op.SUB:
                value = a - b
            elif op == Op.MUL:
                value = a * b
            else:
                value = divide(node, a, b) if divide else a / b
        values[node.id] = value
        if on_value is not None:
            on_value(node, value)
    return values


def _check_arity(circuit: Circuit, u: Sequence, x: Sequence) -> None:
    if len(u) != circuit.params:
        raise ArityMismatch(circuit.params, len(u))
    if len(x) != circuit.inputs:
        raise ArityMismatch(circuit.inputs, len(x))


def eval_point(circuit: Circuit, u: Sequence, x: Sequence, raise_on_failure: bool = True) -> EvalTrace:
    """
    Exact evaluation at the parameter point u and input point x.

    Raises:
        DivisionByZero: a divisor is exactly zero here (carries the partial trace);
            with raise_on_failure=False the trace is returned with failure_site set.
    """
    require_valid(circuit)
    _check_arity(circuit, u, x)
    u = [to_scalar(v) for v in u]
    x = [to_scalar(v) for v in x]

    def divide(node, a, b):
        if b == 0:
            raise DivisionByZero(node.id)
        return a / b

    trace = EvalTrace()
    try:
        run_circuit(circuit, u, x, divide=divide, values=trace.values)
    except DivisionByZero as e:
        trace.failure_site = e.node
        logger.debug(f"Evaluation stopped at node {e.node}")
        if raise_on_failure:
            raise DivisionByZero(e.node, trace) from None
        return trace
    trace.outputs = tuple(trace.values[o] for o in circuit.outputs)
    return trace


def run_partial(circuit: Circuit, params: Sequence[Any], inputs: Sequence[Any],
                scalar: Callable[[Scalar], Any] = None, is_zero: Callable[[Any], bool] = None,
                on_value: Callable[[Node, Any], None] = None) -> Dict[int, Optional[Any]]:
    """
    Like run_circuit, but keeps going past failed divisions: the failed node
    and everything depending on it get the value None.
    """
    is_zero = is_zero or (lambda v: v == 0)
    values: Dict[int, Optional[Any]] = {}
    for node in circuit.nodes:
        if node.op == Op.SCALAR:
            value = scalar(node.value) if scalar else node.value
        elif node.op == Op.PARAM:
            value = params[node.index - 1]
        elif node.op == Op.INPUT:
            value = inputs[node.index - 1]
        else:
            a, b = values[node.args[0]], values[node.args[1]]
            if a is None or b is None:
                value = None
            elif node.op == Op.ADD:
                value = a + b
            elif node.op == Op.SUB:
                value = a - b
            elif node.op == Op.MUL:
                value = a * b
            else:
                value = None if is_zero(b) else a / b
        values[node.id] = value
        if on_value is not None and value is not None:
            on_value(node, value)
    return values


def eval_partial(circuit: Circuit, u: Sequence, x: Sequence) -> Dict[int, Optional[Scalar]]:
    """Exact pointwise run_partial."""
    _check_arity(circuit, u, x)
    return run_partial(circuit, [to_scalar(v) for v in u], [to_scalar(v) for v in x])
