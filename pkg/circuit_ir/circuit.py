#!filepath: circuit_ir/circuit.py
"""
Parameterized arithmetic circuits.

A circuit is a DAG over scalar, parameter and input leaves with binary
add/sub/mul/div nodes. Nodes are kept in topological order (every argument
appears earlier in the sequence), so acyclicity is part of the representation.
Parameter and input indices are 1-based.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from algebra.scalar import Scalar, format_scalar, to_scalar
from .errors import CycleDetected

logger = logging.getLogger(__name__)


class Op(str, Enum):
    SCALAR = "scalar"
    PARAM = "param"
    INPUT = "input"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"

    @property
    def is_leaf(self) -> bool:
        return self in LEAF_OPS

    @property
    def is_commutative(self) -> bool:
        return self in (Op.ADD, Op.MUL)


LEAF_OPS = frozenset({Op.SCALAR, Op.PARAM, Op.INPUT})
BINARY_OPS = frozenset({Op.ADD, Op.SUB, Op.MUL, Op.DIV})


@dataclass(frozen=True)
class Node:
    id: int
    op: Op
    value: Optional[Scalar] = None
    index: Optional[int] = None
    args: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "op", Op(self.op))
        object.__setattr__(self, "args", tuple(self.args))
        if self.value is not None:
            object.__setattr__(self, "value", to_scalar(self.value))

    @property
    def is_leaf(self) -> bool:
        return self.op.is_leaf

    def with_args(self, args: Sequence[int]) -> "Node":
        return Node(self.id, self.op, self.value, self.index, tuple(args))

    def with_id(self, node_id: int) -> "Node":
        return Node(node_id, self.op, self.value, self.index, self.args)

    def label(self) -> str:
        if self.op == Op.SCALAR:
            return f"Scalar({format_scalar(self.value) if self.value is not None else '?'})"
        if self.op == Op.PARAM:
            return f"Param({self.index})"
        if self.op == Op.INPUT:
            return f"Input({self.index})"
        return f"{self.op.value.capitalize()}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Circuit:
    """Immutable circuit value. Construction does not validate; see circuit_ir.validate."""
    params: int
    inputs: int
    nodes: Tuple[Node, ...]
    outputs: Tuple[int, ...]
    _by_id: Dict[int, Node] = field(init=False, repr=False, compare=False)
    _position: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "_by_id", {node.id: node for node in self.nodes})
        object.__setattr__(self, "_position", {node.id: pos for pos, node in enumerate(self.nodes)})

    def node(self, node_id: int) -> Node:
        return self._by_id[node_id]

    def has_node(self, node_id: int) -> bool:
        return node_id in self._by_id

    def position(self, node_id: int) -> int:
        return self._position[node_id]

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def ids(self) -> List[int]:
        return [node.id for node in self.nodes]

    def max_id(self) -> int:
        return max((node.id for node in self.nodes), default=-1)

    def outdegree(self) -> Dict[int, int]:
        """Number of outgoing edges per node (arguments only; outputs are not edges)."""
        degree = {node.id: 0 for node in self.nodes}
        for node in self.nodes:
            for arg in node.args:
                if arg in degree:
                    degree[arg] += 1
        return degree

    def users(self) -> Dict[int, List[int]]:
        used_by: Dict[int, List[int]] = {node.id: [] for node in self.nodes}
        for node in self.nodes:
            for arg in node.args:
                if arg in used_by:
                    used_by[arg].append(node.id)
        return used_by

    def param_nodes(self) -> List[Node]:
        return [node for node in self.nodes if node.op == Op.PARAM]

    def input_nodes(self) -> List[Node]:
        return [node for node in self.nodes if node.op == Op.INPUT]

    def with_outputs(self, outputs: Sequence[int]) -> "Circuit":
        return Circuit(self.params, self.inputs, self.nodes, tuple(outputs))

    def with_nodes(self, nodes: Iterable[Node], outputs: Optional[Sequence[int]] = None) -> "Circuit":
        return Circuit(self.params, self.inputs, tuple(nodes), self.outputs if outputs is None else tuple(outputs))

    def renumbered(self) -> "Circuit":
        """Same circuit with ids 0..size-1 in sequence order."""
        mapping = {node.id: pos for pos, node in enumerate(self.nodes)}
        nodes = [Node(mapping[n.id], n.op, n.value, n.index, tuple(mapping[a] for a in n.args)) for n in self.nodes]
        return Circuit(self.params, self.inputs, nodes, tuple(mapping[o] for o in self.outputs))

    def __repr__(self):
        return f"Circuit(params={self.params}, inputs={self.inputs}, size={self.size}, outputs={list(self.outputs)})"


def toposort_nodes(nodes: Sequence[Node]) -> List[Node]:
    """
    Stable topological sort: among the nodes whose arguments are placed, the
    one earliest in the given sequence goes first, so an already ordered
    sequence is returned unchanged.

    Raises:
        CycleDetected: some nodes depend on each other.
    """
    rank = {node.id: pos for pos, node in enumerate(nodes)}
    by_id = {node.id: node for node in nodes}
    pending = {node.id: sum(1 for a in set(node.args) if a in by_id) for node in nodes}
    users: Dict[int, List[int]] = {node.id: [] for node in nodes}
    for node in nodes:
        for arg in set(node.args):
            if arg in users:
                users[arg].append(node.id)
    ready = [rank[i] for i, count in pending.items() if count == 0]
    heapq.heapify(ready)
    ordered: List[Node] = []
    while ready:
        node = nodes[heapq.heappop(ready)]
        ordered.append(node)
        for user in users[node.id]:
            pending[user] -= 1
            if pending[user] == 0:
                heapq.heappush(ready, rank[user])
    if len(ordered) != len(nodes):
        stuck = [i for i, count in pending.items() if count > 0]
        raise CycleDetected(stuck)
    return ordered


class CircuitBuilder:
    """
    Incremental construction of circuits in topological order.

    Leaves are shared: asking twice for Param(1) or Scalar(2) returns the same id.
    """

    def __init__(self, params: int, inputs: int):
        self.params = params
        self.inputs = inputs
        self._nodes: List[Node] = []
        self._leaves: Dict[Tuple[Op, object], int] = {}

    def _append(self, op: Op, value=None, index=None, args=()) -> int:
        node_id = len(self._nodes)
        self._nodes.append(Node(node_id, op, value, index, tuple(args)))
        return node_id

    def _leaf(self, op: Op, key, **kwargs) -> int:
        cache_key = (op, key)
        if cache_key not in self._leaves:
            self._leaves[cache_key] = self._append(op, **kwargs)
        return self._leaves[cache_key]

    def scalar(self, value) -> int:
        value = to_scalar(value)
        return self._leaf(Op.SCALAR, value, value=value)

    def param(self, index: int) -> int:
        if not 1 <= index <= self.params:
            raise ValueError(f"Param index {index} outside 1..{self.params}")
        return self._leaf(Op.PARAM, index, index=index)

    def input(self, index: int) -> int:
        if not 1 <= index <= self.inputs:
            raise ValueError(f"Input index {index} outside 1..{self.inputs}")
        return self._leaf(Op.INPUT, index, index=index)

    def _binary(self, op: Op, a: int, b: int) -> int:
        for arg in (a, b):
            if not 0 <= arg < len(self._nodes):
                raise ValueError(f"Unknown argument id {arg}")
        return self._append(op, args=(a, b))

    def add(self, a: int, b: int) -> int:
        return self._binary(Op.ADD, a, b)

    def sub(self, a: int, b: int) -> int:
        return self._binary(Op.SUB, a, b)

    def mul(self, a: int, b: int) -> int:
        return self._binary(Op.MUL, a, b)

    def div(self, a: int, b: int) -> int:
        return self._binary(Op.DIV, a, b)

    def sum(self, ids: Sequence[int]) -> int:
        """Left-to-right chain of additions; a single id is returned as is."""
        if not ids:
            return self.scalar(Fraction(0))
        total = ids[0]
        for node_id in ids[1:]:
            total = self.add(total, node_id)
        return total

    def prod(self, ids: Sequence[int]) -> int:
        if not ids:
            return self.scalar(Fraction(1))
        total = ids[0]
        for node_id in ids[1:]:
            total = self.mul(total, node_id)
        return total

    def power(self, base: int, exponent: int) -> int:
        """base^exponent by square-and-multiply."""
        if exponent < 0:
            raise ValueError("Negative exponents need an explicit division")
        if exponent == 0:
            return self.scalar(Fraction(1))
        result = None
        square = base
        while exponent:
            if exponent & 1:
                result = square if result is None else self.mul(result, square)
            exponent >>= 1
            if exponent:
                square = self.mul(square, square)
        return result

    @property
    def size(self) -> int:
        return len(self._nodes)

    def build(self, outputs: Sequence[int]) -> Circuit:
        return Circuit(self.params, self.inputs, tuple(self._nodes), tuple(outputs))
