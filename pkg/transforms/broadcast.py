#!filepath: transforms/broadcast.py
import logging
from typing import Dict, Optional, Sequence

from algebra.errors import ArityMismatch
from circuit_ir.circuit import Circuit, Op, toposort_nodes
from circuit_ir.domain import AffineSpace, ParameterDomain
from circuit_ir.validate import require_valid
from semantics.consistency import Verdict, consistency_check
from semantics.fingerprint import equal_results, fingerprint
from .errors import InconsistentBroadcast, RewriteChangedResults
from .gc import garbage_collect
from .graft import graft

logger = logging.getLogger(__name__)


def broadcast(circuit: Circuit, anchors: Sequence[int], template: Circuit, targets: Optional[Sequence[int]] = None,
              domain: Optional[ParameterDomain] = None, seed: int = 0, verify: bool = True) -> Circuit:
    """
    Grafts `template` onto the circuit: its input Y_j is wired to node anchors[j]
    and its output j takes over every use of targets[j] (targets default to the
    anchors). Parameters are shared. The template must rewrite by valid
    identities, so the final results stay the same.

    Raises:
        ArityMismatch: the template's inputs/outputs do not match anchors/targets.
        CycleDetected: a target feeds one of the anchors.
        RewriteChangedResults: fingerprints of the final results changed.
        InconsistentBroadcast: the rewritten circuit is inconsistent on the domain.
    """
    require_valid(circuit)
    require_valid(template)
    targets = list(anchors) if targets is None else list(targets)
    if template.inputs != len(anchors):
        raise ArityMismatch(len(anchors), template.inputs)
    if len(template.outputs) != len(targets):
        raise ArityMismatch(len(targets), len(template.outputs))
    if template.params != circuit.params:
        raise ArityMismatch(circuit.params, template.params)
    for node_id in list(anchors) + targets:
        if not circuit.has_node(node_id):
            raise ValueError(f"Node {node_id} is not in the circuit")

    params = {node.index: node.id for node in circuit.nodes if node.op == Op.PARAM}

    def leaf_map(node):
        if node.op == Op.INPUT:
            return anchors[node.index - 1]
        if node.op == Op.PARAM:
            return params.get(node.index)
        return None

    grafted = []
    mapping, _ = graft(grafted, circuit.max_id() + 1, template, leaf_map)
    replacement: Dict[int, int] = {}
    for target, output in zip(targets, template.outputs):
        replacement[target] = mapping[output]

    original = [node.with_args([replacement.get(a, a) for a in node.args]) for node in circuit.nodes]
    outputs = [replacement.get(o, o) for o in circuit.outputs]
    nodes = toposort_nodes(original + grafted)
    result = garbage_collect(Circuit(circuit.params, circuit.inputs, tuple(nodes), tuple(outputs)))
    require_valid(result)
    logger.debug(f"Broadcast grafted {len(grafted)} nodes; size {circuit.size} -> {result.size}")

    if verify:
        domain = domain or AffineSpace(circuit.params)
        if not equal_results(fingerprint(circuit, seed, domain=domain), fingerprint(result, seed, domain=domain)):
            raise RewriteChangedResults()
        verdict = consistency_check(result, domain, seed=seed)
        if verdict.verdict == Verdict.INCONSISTENT:
            raise InconsistentBroadcast(verdict.node, result)
    return result
