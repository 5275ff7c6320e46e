#!filepath: semantics/symbolic.py
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from algebra.ratfunc import RatFunc
from algebra.sparse_poly import SparsePoly
from circuit_ir.circuit import Circuit
from circuit_ir.classify import classify, is_essentially_division_free, is_totally_division_free
from circuit_ir.validate import require_valid
from .config import SemanticsSettings
from .errors import BudgetExceeded, DivisionByZeroFunction
from .evaluate import run_circuit

logger = logging.getLogger(__name__)


def variable_names(params: int, inputs: int) -> List[str]:
    return [f"u{i + 1}" for i in range(params)] + [f"x{i + 1}" for i in range(inputs)]


@dataclass
class SymbolicExpansion:
    """
    Exact rational functions of every node in the variables U1..Ur, X1..Xn
    (variables 0..r-1 are parameters, r..r+n-1 inputs).
    """
    params: int
    inputs: int
    values: Dict[int, RatFunc]
    outputs: Tuple[RatFunc, ...]
    polynomial_in_x: bool
    non_polynomial_nodes: List[int] = field(default_factory=list)
    totally_division_free: bool = False
    essentially_division_free: bool = False

    @property
    def nvars(self) -> int:
        return self.params + self.inputs

    @property
    def input_variables(self) -> range:
        return range(self.params, self.params + self.inputs)

    def names(self) -> List[str]:
        return variable_names(self.params, self.inputs)

    def output_polys(self) -> List[SparsePoly]:
        """Outputs as polynomials; raises ValueError if some output has a nonconstant denominator."""
        return [f.as_poly() for f in self.outputs]

    def format_outputs(self) -> List[str]:
        names = self.names()
        out = []
        for f in self.outputs:
            if f.is_polynomial():
                out.append(f.as_poly().format(names))
            else:
                out.append(f"({f.num.format(names)}) / ({f.den.format(names)})")
        return out


def expand_symbolic(circuit: Circuit, budget: Optional[int] = None) -> SymbolicExpansion:
    """
    Expands every node into an exact rational function of (U, X).

    Also reports whether every intermediate result is a polynomial in X
    (its normalized denominator is free of X), the checkable consequence of
    robustness for essentially division-free circuits.

    Raises:
        BudgetExceeded: some node's numerator plus denominator exceed `budget` terms.
        DivisionByZeroFunction: a divisor is the identically zero function.
    """
    require_valid(circuit)
    budget = budget if budget is not None else SemanticsSettings().expand_budget
    r, n = circuit.params, circuit.inputs
    nvars = r + n
    params = [RatFunc.from_poly(SparsePoly.variable(nvars, i)) for i in range(r)]
    inputs = [RatFunc.from_poly(SparsePoly.variable(nvars, r + i)) for i in range(n)]

    def divide(node, a, b):
        if b.is_zero():
            raise DivisionByZeroFunction(node.id)
        return a / b

    def check_budget(node, value):
        terms = value.term_count()
        if terms > budget:
            raise BudgetExceeded(node.id, terms, budget)

    values = run_circuit(circuit, params, inputs, scalar=lambda v: RatFunc.constant(nvars, v),
                         divide=divide, on_value=check_budget)
    x_indices = list(range(r, nvars))
    non_polynomial = [node_id for node_id, f in values.items() if not f.denominator_free_of(x_indices)]
    table = classify(circuit)
    expansion = SymbolicExpansion(
        params=r,
        inputs=n,
        values=values,
        outputs=tuple(values[o] for o in circuit.outputs),
        polynomial_in_x=not non_polynomial,
        non_polynomial_nodes=non_polynomial,
        totally_division_free=is_totally_division_free(circuit),
        essentially_division_free=is_essentially_division_free(circuit, table),
    )
    logger.debug(f"Expanded {circuit.size} nodes; polynomial in X: {expansion.polynomial_in_x}")
    return expansion
