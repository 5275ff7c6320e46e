#!filepath: transforms/reduce.py
"""
Reduction: merging nodes that compute the same intermediate result.

Schedule (reduction is neither unique nor confluent, so it is fixed here):
structural hash-consing first, then candidates with equal value vectors at
seeded sample points, visited in sequence order; every node in a group is
merged into the earliest one. Both phases repeat until nothing changes.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from algebra.errors import CircuitLabError
from circuit_ir.circuit import Circuit, Node, Op
from circuit_ir.domain import ParameterDomain
from circuit_ir.validate import require_valid
from semantics.config import SemanticsSettings
from semantics.fingerprint import node_value_table
from semantics.symbolic import expand_symbolic
from .gc import garbage_collect

logger = logging.getLogger(__name__)

ORACLES = ("fingerprint", "exact")


@dataclass
class ReductionReport:
    circuit: Circuit
    merges: List[Tuple[int, int]] = field(default_factory=list)
    skipped: List[Tuple[int, int]] = field(default_factory=list)
    rounds: int = 0

    @property
    def removed(self) -> int:
        return len(self.merges)


def _redirect(circuit: Circuit, replace: Dict[int, int]) -> Circuit:
    """Rewires every use of a key of `replace` to its value and drops the replaced nodes."""

    def resolve(node_id: int) -> int:
        while node_id in replace:
            node_id = replace[node_id]
        return node_id

    nodes = [node.with_args([resolve(a) for a in node.args]) for node in circuit.nodes if node.id not in replace]
    return Circuit(circuit.params, circuit.inputs, tuple(nodes), tuple(resolve(o) for o in circuit.outputs))


def _structure_key(node: Node):
    if node.op == Op.SCALAR:
        return node.op, node.value
    if node.is_leaf:
        return node.op, node.index
    args = tuple(sorted(node.args)) if node.op.is_commutative else node.args
    return node.op, args


def hash_cons(circuit: Circuit) -> Tuple[Circuit, List[Tuple[int, int]]]:
    """Merges syntactically identical nodes (commutative arguments unordered); keeps the earliest."""
    replace: Dict[int, int] = {}
    seen: Dict[tuple, int] = {}
    merges: List[Tuple[int, int]] = []
    for node in circuit.nodes:
        args = [replace.get(a, a) for a in node.args]
        key = _structure_key(node.with_args(args))
        if key in seen:
            replace[node.id] = seen[key]
            merges.append((seen[key], node.id))
        else:
            seen[key] = node.id
    if not replace:
        return circuit, merges
    return _redirect(circuit, replace), merges


def _semantic_groups(circuit: Circuit, domain: Optional[ParameterDomain], seed: int,
                     settings: SemanticsSettings) -> List[List[int]]:
    table = node_value_table(circuit, seed, settings.fingerprint_points, domain, settings)
    floor = settings.fingerprint_floor
    groups: Dict[tuple, List[int]] = {}
    for node in circuit.nodes:
        vector = table[node.id]
        if sum(1 for v in vector if v is not None) < floor:
            continue
        groups.setdefault(vector, []).append(node.id)
    return [ids for ids in groups.values() if len(ids) > 1]


def reduce_circuit(circuit: Circuit, oracle: str = "fingerprint", domain: Optional[ParameterDomain] = None,
                   seed: int = 0, settings: Optional[SemanticsSettings] = None,
                   max_rounds: int = 64) -> ReductionReport:
    """
    Repeatedly merges nodes with identical intermediate results until a fixpoint.

    oracle="fingerprint" trusts equal value vectors at the sample points;
    oracle="exact" confirms each candidate pair by symbolic expansion and skips
    (and reports) pairs it cannot decide. Final results are preserved as a
    multiset; the node count never increases.
    """
    if oracle not in ORACLES:
        raise ValueError(f"Unknown reduction oracle '{oracle}', expected one of {ORACLES}")
    require_valid(circuit)
    settings = settings or SemanticsSettings()
    report = ReductionReport(circuit=circuit)
    current = circuit
    skipped = set()
    for round_number in range(1, max_rounds + 1):
        report.rounds = round_number
        current, merges = hash_cons(current)
        report.merges.extend(merges)

        expansion = None
        if oracle == "exact":
            try:
                expansion = expand_symbolic(current)
            except CircuitLabError as e:
                logger.warning(f"Exact oracle unavailable ({e}); semantic candidates are skipped")

        replace: Dict[int, int] = {}
        for group in _semantic_groups(current, domain, seed, settings):
            keeper = group[0]
            for other in group[1:]:
                pair = (keeper, other)
                if oracle == "exact":
                    if expansion is None or not expansion.values[keeper] == expansion.values[other]:
                        if pair not in skipped:
                            skipped.add(pair)
                            report.skipped.append(pair)
                        continue
                replace[other] = keeper
                report.merges.append(pair)

        if replace:
            current = _redirect(current, replace)
            # keepers precede the merged nodes; re-check the ordering anyway
            require_valid(current)
        current = garbage_collect(current)
        if not merges and not replace:
            break
    report.circuit = current
    logger.info(f"Reduction: {circuit.size} -> {current.size} nodes in {report.rounds} rounds "
                f"({len(report.merges)} merges, {len(report.skipped)} skipped)")
    return report


def reduce(circuit: Circuit, oracle: str = "fingerprint", domain: Optional[ParameterDomain] = None,
           seed: int = 0) -> Circuit:
    return reduce_circuit(circuit, oracle, domain, seed).circuit
