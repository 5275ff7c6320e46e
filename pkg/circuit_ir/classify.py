#!filepath: circuit_ir/classify.py
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from algebra.scalar import Scalar
from .circuit import Circuit, Op
from .validate import require_valid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeClass:
    """
    Dependence flags of one node.

    A parameter node is a node that does not depend on any input. A node is
    essential when it is an add/sub/mul whose two arguments both depend on an
    input, or a division whose second argument depends on an input.
    """
    depends_on_input: bool
    depends_on_param: bool
    is_parameter_node: bool
    is_essential: bool

    def to_dict(self) -> Dict[str, bool]:
        return {
            "depends_on_input": self.depends_on_input,
            "depends_on_param": self.depends_on_param,
            "is_parameter_node": self.is_parameter_node,
            "is_essential": self.is_essential,
        }


def classify(circuit: Circuit) -> Dict[int, NodeClass]:
    """
    Computes NodeClass for every node from reachability alone.

    Raises:
        InvalidCircuit: the circuit is not structurally valid.
    """
    require_valid(circuit)
    table: Dict[int, NodeClass] = {}
    for node in circuit.nodes:
        if node.op == Op.INPUT:
            on_input, on_param = True, False
        elif node.op == Op.PARAM:
            on_input, on_param = False, True
        elif node.op == Op.SCALAR:
            on_input, on_param = False, False
        else:
            a, b = (table[arg] for arg in node.args)
            on_input = a.depends_on_input or b.depends_on_input
            on_param = a.depends_on_param or b.depends_on_param
        essential = False
        if node.op in (Op.ADD, Op.SUB, Op.MUL):
            a, b = (table[arg] for arg in node.args)
            essential = a.depends_on_input and b.depends_on_input
        elif node.op == Op.DIV:
            essential = table[node.args[1]].depends_on_input
        table[node.id] = NodeClass(on_input, on_param, not on_input, essential)
    return table


def constant_values(circuit: Circuit) -> Dict[int, Optional[Scalar]]:
    """
    Exact values of the nodes that depend on neither parameters nor inputs.

    A constant node whose computation divides by zero maps to None.
    """
    values: Dict[int, Optional[Scalar]] = {}
    for node in circuit.nodes:
        if node.op == Op.SCALAR:
            values[node.id] = node.value
            continue
        if node.is_leaf or not all(arg in values for arg in node.args):
            continue
        a, b = (values[arg] for arg in node.args)
        if a is None or b is None:
            values[node.id] = None
        elif node.op == Op.ADD:
            values[node.id] = a + b
        elif node.op == Op.SUB:
            values[node.id] = a - b
        elif node.op == Op.MUL:
            values[node.id] = a * b
        else:
            values[node.id] = None if b == 0 else a / b
    return values


def division_nodes(circuit: Circuit) -> List[int]:
    return [node.id for node in circuit.nodes if node.op == Op.DIV]


def is_totally_division_free(circuit: Circuit) -> bool:
    """Every division is by a nonzero constant (a node built from scalars only)."""
    constants = constant_values(circuit)
    for node in circuit.nodes:
        if node.op == Op.DIV:
            divisor = constants.get(node.args[1], None)
            if node.args[1] not in constants or divisor is None or divisor == 0:
                return False
    return True


def is_essentially_division_free(circuit: Circuit, table: Optional[Dict[int, NodeClass]] = None) -> bool:
    """Every division sits at a parameter node."""
    table = table if table is not None else classify(circuit)
    return all(table[node.id].is_parameter_node for node in circuit.nodes if node.op == Op.DIV)


def essential_nodes(circuit: Circuit) -> List[int]:
    table = classify(circuit)
    return [node_id for node_id, flags in table.items() if flags.is_essential]
