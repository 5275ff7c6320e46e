#!filepath: transforms/graft.py
from typing import Callable, Dict, List, Optional, Tuple

from circuit_ir.circuit import Circuit, Node


def graft(nodes: List[Node], next_id: int, source: Circuit,
          leaf_map: Callable[[Node], Optional[int]]) -> Tuple[Dict[int, int], int]:
    """
    Appends a copy of `source` to `nodes` with fresh ids starting at next_id.

    Leaves for which leaf_map returns an id are not copied but aliased to that
    existing node. Returns the id mapping source -> result and the next free id.
    """
    mapping: Dict[int, int] = {}
    for node in source.nodes:
        target = leaf_map(node) if node.is_leaf else None
        if target is not None:
            mapping[node.id] = target
            continue
        nodes.append(Node(next_id, node.op, node.value, node.index, tuple(mapping[a] for a in node.args)))
        mapping[node.id] = next_id
        next_id += 1
    return mapping, next_id
