#!filepath: circuit_ir/random_circuits.py
import random
from fractions import Fraction
from typing import Dict

from .circuit import Circuit, CircuitBuilder

DEGREE_CAP = 8


def random_circuit(rng: random.Random, params: int, inputs: int, size: int, div_rate: float = 0.1,
                   scalars: int = 2, degree_cap: int = DEGREE_CAP) -> Circuit:
    """
    A seeded random valid circuit with at most `size` nodes.

    Unused nodes are preferred as first arguments, and every node nobody uses
    becomes an output, so there are no dangling nodes. Divisors are always
    parameter or input leaves, so no division is by the zero function.
    Multiplications that would push the degree past `degree_cap` become additions.
    """
    builder = CircuitBuilder(params, inputs)
    pool = [builder.param(i + 1) for i in range(params)] + [builder.input(i + 1) for i in range(inputs)]
    divisors = list(pool)
    for _ in range(scalars):
        value = rng.choice([-3, -2, -1, 1, 2, 3])
        pool.append(builder.scalar(Fraction(value, rng.randint(1, 3))))
    pool = list(dict.fromkeys(pool))
    degree: Dict[int, int] = {node_id: (0 if node_id not in divisors else 1) for node_id in pool}
    used = set()

    while builder.size < size:
        unused = [node_id for node_id in pool if node_id not in used]
        a = unused[0] if unused and rng.random() < 0.7 else rng.choice(pool)
        roll = rng.random()
        if divisors and roll < div_rate:
            b = rng.choice(divisors)
            op, new_degree = builder.div, degree[a] + degree[b]
        else:
            b = rng.choice(pool)
            if roll < 0.55 and degree[a] + degree[b] <= degree_cap:
                op, new_degree = builder.mul, degree[a] + degree[b]
            else:
                op = builder.sub if rng.random() < 0.3 else builder.add
                new_degree = max(degree[a], degree[b])
        if op == builder.div and new_degree > degree_cap:
            op, new_degree = builder.add, max(degree[a], degree[b])
        node_id = op(a, b)
        used.update((a, b))
        degree[node_id] = new_degree
        pool.append(node_id)

    outputs = [node_id for node_id in pool if node_id not in used]
    return builder.build(outputs)
