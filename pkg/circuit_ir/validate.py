#!filepath: circuit_ir/validate.py
import logging
from typing import List, Optional

from pydantic import BaseModel, Field

from .circuit import Circuit, Op
from .errors import InvalidCircuit

logger = logging.getLogger(__name__)

# Violations that make the DAG itself unusable; "dangling" only breaks the output convention.
STRUCTURAL_KINDS = frozenset({"duplicate_id", "arity", "unknown_arg", "ordering", "index_range",
                              "missing_value", "counts"})


class Violation(BaseModel):
    """
    One broken circuit invariant.
    """
    kind: str = Field(..., description="duplicate_id, arity, unknown_arg, ordering, index_range, missing_value, "
                                       "counts, outputs or dangling")
    node: Optional[int] = Field(None, description="Offending node id, if any")
    message: str


class ValidationReport(BaseModel):
    """
    Pydantic model for the result of validate(); serializes as the `circ validate --json` report.
    """
    valid: bool
    node_count: int
    violations: List[Violation] = Field(default_factory=list)

    @property
    def structurally_sound(self) -> bool:
        return not any(v.kind in STRUCTURAL_KINDS for v in self.violations)

    def kinds(self) -> List[str]:
        return sorted({v.kind for v in self.violations})


def validate(circuit: Circuit) -> ValidationReport:
    """
    Checks every structural circuit invariant and lists the violations with node ids.

    Never raises; an empty violation list means the circuit is valid.
    """
    violations: List[Violation] = []

    def report(kind: str, node: Optional[int], message: str):
        violations.append(Violation(kind=kind, node=node, message=message))

    if circuit.params < 0 or circuit.inputs < 0:
        report("counts", None, f"Negative parameter or input count ({circuit.params}, {circuit.inputs})")

    seen = {}
    for position, node in enumerate(circuit.nodes):
        if node.id in seen:
            report("duplicate_id", node.id, f"Node id {node.id} appears at positions {seen[node.id]} and {position}")
        else:
            seen[node.id] = position

    for position, node in enumerate(circuit.nodes):
        if node.is_leaf:
            if node.args:
                report("arity", node.id, f"Leaf node {node.id} ({node.op.value}) has {len(node.args)} arguments")
            if node.op == Op.SCALAR and node.value is None:
                report("missing_value", node.id, f"Scalar node {node.id} has no value")
            if node.op == Op.PARAM and (node.index is None or not 1 <= node.index <= circuit.params):
                report("index_range", node.id, f"Param index {node.index} outside 1..{circuit.params}")
            if node.op == Op.INPUT and (node.index is None or not 1 <= node.index <= circuit.inputs):
                report("index_range", node.id, f"Input index {node.index} outside 1..{circuit.inputs}")
            continue
        if len(node.args) != 2:
            report("arity", node.id, f"Node {node.id} ({node.op.value}) has {len(node.args)} arguments, expected 2")
        for arg in node.args:
            if arg not in seen:
                report("unknown_arg", node.id, f"Node {node.id} references unknown node {arg}")
            elif seen[arg] >= position:
                report("ordering", node.id, f"Node {node.id} references node {arg}, which is not earlier in the sequence")

    if not circuit.outputs:
        report("outputs", None, "Circuit has no outputs")
    for output in circuit.outputs:
        if output not in seen:
            report("outputs", output, f"Output {output} is not a node")

    output_set = set(circuit.outputs)
    for node_id, degree in circuit.outdegree().items():
        if degree == 0 and node_id not in output_set:
            report("dangling", node_id, f"Node {node_id} has outdegree zero but is not an output")

    if violations:
        logger.debug(f"Validation found {len(violations)} violations: {sorted({v.kind for v in violations})}")
    return ValidationReport(valid=not violations, node_count=circuit.size, violations=violations)


def require_valid(circuit: Circuit, structural_only: bool = True) -> None:
    """Raises InvalidCircuit unless the circuit passes validation (dangling sinks tolerated by default)."""
    report = validate(circuit)
    if report.valid or (structural_only and report.structurally_sound):
        return
    raise InvalidCircuit(report)
