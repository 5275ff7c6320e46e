#!filepath: cost_model/report.py
"""
Non-scalar (Ostrowski) cost of a circuit.

Linear operations and multiplications by constants are free; only essential
multiplications and divisions (both sides depending on an input, or an
input-dependent divisor) cost one unit each.
"""
import logging
from typing import Dict, List

from pydantic import BaseModel, Field

from circuit_ir.circuit import Circuit, Op
from circuit_ir.classify import NodeClass, classify

logger = logging.getLogger(__name__)


class CostReport(BaseModel):
    """
    Pydantic model for `circ cost --json`.
    """
    essential_mults: int = Field(..., description="Multiplications with both arguments input-dependent")
    essential_divs: int = Field(..., description="Divisions with an input-dependent divisor")
    param_mults: int = Field(..., description="Multiplications of an input-dependent node by a parameter-dependent "
                                              "parameter node")
    nonscalar_size: int = Field(..., description="essential_mults + essential_divs")
    total_mults_nonscalar: int = Field(..., description="Multiplications and divisions not by a constant")
    node_count: int
    depth: int = Field(..., description="Largest number of essential multiplications/divisions on a path")
    total_depth: int = Field(..., description="Longest path length counting every operation")
    essential_param_count: int = Field(..., description="Parameter nodes with an edge into an input-dependent node")


class ParameterAudit(BaseModel):
    """
    Pydantic model for the essential parameters of a circuit.
    """
    m: int
    nodes: List[int] = Field(default_factory=list)


def _is_constant(flags: NodeClass) -> bool:
    return not flags.depends_on_input and not flags.depends_on_param


def essential_parameters(circuit: Circuit, table: Dict[int, NodeClass] = None) -> List[int]:
    """
    Parameter nodes (depending on some parameter, not on an input) with an
    outgoing edge into an input-dependent node. Pure constants are not parameters.
    """
    table = table if table is not None else classify(circuit)
    essential = set()
    for node in circuit.nodes:
        if node.is_leaf or not table[node.id].depends_on_input:
            continue
        for arg in node.args:
            flags = table[arg]
            if flags.is_parameter_node and flags.depends_on_param:
                essential.add(arg)
    return [node.id for node in circuit.nodes if node.id in essential]


def parameter_audit(circuit: Circuit) -> ParameterAudit:
    nodes = essential_parameters(circuit)
    return ParameterAudit(m=len(nodes), nodes=nodes)


def cost(circuit: Circuit) -> CostReport:
    """Counts per definition; deterministic and independent of the node order."""
    table = classify(circuit)
    essential_mults = essential_divs = param_mults = total = 0
    depth: Dict[int, int] = {}
    total_depth: Dict[int, int] = {}
    for node in circuit.nodes:
        if node.is_leaf:
            depth[node.id] = 0
            total_depth[node.id] = 0
            continue
        a, b = (table[arg] for arg in node.args)
        flags = table[node.id]
        unit = 0
        if node.op == Op.MUL:
            if flags.is_essential:
                essential_mults += 1
                unit = 1
            elif (a.depends_on_input and b.is_parameter_node and b.depends_on_param) or \
                    (b.depends_on_input and a.is_parameter_node and a.depends_on_param):
                param_mults += 1
            if not _is_constant(a) and not _is_constant(b):
                total += 1
        elif node.op == Op.DIV:
            if flags.is_essential:
                essential_divs += 1
                unit = 1
            if not _is_constant(b):
                total += 1
        depth[node.id] = max(depth[arg] for arg in node.args) + unit
        total_depth[node.id] = max(total_depth[arg] for arg in node.args) + 1
    report = CostReport(
        essential_mults=essential_mults,
        essential_divs=essential_divs,
        param_mults=param_mults,
        nonscalar_size=essential_mults + essential_divs,
        total_mults_nonscalar=total,
        node_count=circuit.size,
        depth=max((depth[o] for o in circuit.outputs), default=0),
        total_depth=max((total_depth[o] for o in circuit.outputs), default=0),
        essential_param_count=len(essential_parameters(circuit, table)),
    )
    logger.debug(f"Cost: {report.model_dump()}")
    return report
