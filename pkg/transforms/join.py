#!filepath: transforms/join.py
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from algebra.errors import ArityMismatch
from circuit_ir.circuit import Circuit, Op
from circuit_ir.classify import classify
from circuit_ir.domain import AffineSpace, ParameterDomain
from circuit_ir.validate import require_valid
from semantics.consistency import Verdict, consistency_check
from .errors import InconsistentJoin
from .gc import garbage_collect
from .graft import graft

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JoinSpec:
    """
    One-to-one correspondence between the outputs of the first circuit and the
    inputs (or, with onto="params", the parameters) of the second.

    mapping[p] is the 0-based position fed by output position p.
    """
    mapping: Tuple[int, ...]
    onto: str = "inputs"

    @classmethod
    def identity(cls, count: int, onto: str = "inputs") -> "JoinSpec":
        return cls(tuple(range(count)), onto)

    @classmethod
    def parse(cls, text: str, onto: str = "inputs") -> "JoinSpec":
        """Parses '0:0,1:1' (output position:target position)."""
        pairs: Dict[int, int] = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            source, _, target = item.partition(":")
            if not target:
                raise ValueError(f"Malformed map entry '{item}', expected 'out:in'")
            if int(source) in pairs:
                raise ValueError(f"Output position {source} mapped twice")
            pairs[int(source)] = int(target)
        if sorted(pairs) != list(range(len(pairs))):
            raise ValueError(f"Map must cover output positions 0..{len(pairs) - 1}")
        return cls(tuple(pairs[p] for p in range(len(pairs))), onto)

    def check(self, output_count: int, target_count: int) -> None:
        if len(self.mapping) != output_count:
            raise ArityMismatch(output_count, len(self.mapping))
        if output_count != target_count:
            raise ArityMismatch(target_count, output_count)
        if sorted(self.mapping) != list(range(target_count)):
            raise ValueError(f"Join map {list(self.mapping)} is not a bijection onto 0..{target_count - 1}")


def join(g1: Circuit, g2: Circuit, spec: Optional[JoinSpec] = None, domain: Optional[ParameterDomain] = None,
         collect_garbage: bool = True, check_consistency: bool = True, seed: int = 0) -> Circuit:
    """
    Composes two circuits by identifying the outputs of g1 with the inputs of
    g2 (or with its parameters: the evaluation of g2 at g1's parameter vector).

    Parameters are shared. The result has the inputs of g1 (or of g2 for an
    evaluation) and the outputs of g2.

    Raises:
        ArityMismatch: parameter counts or output/input counts disagree.
        InconsistentJoin: the composed circuit divides by an identically zero function.
    """
    require_valid(g1)
    require_valid(g2)
    spec = spec or JoinSpec.identity(len(g1.outputs), "inputs")
    if spec.onto == "inputs":
        if g1.params != g2.params:
            raise ArityMismatch(g1.params, g2.params)
        spec.check(len(g1.outputs), g2.inputs)
        params, inputs = g1.params, g1.inputs
        aliased_op, shared_op = Op.INPUT, Op.PARAM
    elif spec.onto == "params":
        spec.check(len(g1.outputs), g2.params)
        if g1.inputs > g2.inputs:
            raise ArityMismatch(g2.inputs, g1.inputs)
        table = classify(g1)
        if any(table[o].depends_on_input for o in g1.outputs):
            raise ValueError("Every output substituted for a parameter must be a parameter node")
        params, inputs = g1.params, g2.inputs
        aliased_op, shared_op = Op.PARAM, Op.INPUT
    else:
        raise ValueError(f"Unknown join target '{spec.onto}'")

    fed_by = {target + 1: g1.outputs[position] for position, target in enumerate(spec.mapping)}
    shared = {node.index: node.id for node in g1.nodes if node.op == shared_op}

    def leaf_map(node):
        if node.op == aliased_op:
            return fed_by[node.index]
        if node.op == shared_op:
            return shared.get(node.index)
        return None

    nodes = list(g1.nodes)
    mapping, _ = graft(nodes, g1.max_id() + 1, g2, leaf_map)
    result = Circuit(params, inputs, tuple(nodes), tuple(mapping[o] for o in g2.outputs))
    if collect_garbage or spec.onto == "params":
        result = garbage_collect(result)
    logger.debug(f"Joined {g1.size} + {g2.size} nodes into {result.size}")

    if check_consistency:
        verdict = consistency_check(result, domain or AffineSpace(params), seed=seed)
        if verdict.verdict == Verdict.INCONSISTENT:
            raise InconsistentJoin(verdict.node, result)
        if verdict.verdict == Verdict.UNDECIDED:
            logger.warning(f"Consistency of the join is undecided: {verdict.detail}")
    return result
