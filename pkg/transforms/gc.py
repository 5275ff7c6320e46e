#!filepath: transforms/gc.py
import logging
from typing import Set

from circuit_ir.circuit import Circuit

logger = logging.getLogger(__name__)


def reachable(circuit: Circuit) -> Set[int]:
    """Ids of the nodes with a path to some output."""
    keep = {o for o in circuit.outputs if circuit.has_node(o)}
    for node in reversed(circuit.nodes):
        if node.id in keep:
            keep.update(node.args)
    return keep


def garbage_collect(circuit: Circuit) -> Circuit:
    """Drops every node that no output depends on; order, ids and outputs are kept."""
    keep = reachable(circuit)
    if len(keep) == circuit.size:
        return circuit
    nodes = [node for node in circuit.nodes if node.id in keep]
    logger.debug(f"Garbage collection removed {circuit.size - len(nodes)} nodes")
    return circuit.with_nodes(nodes)
