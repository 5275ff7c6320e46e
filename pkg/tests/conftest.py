#!filepath: tests/conftest.py
import pathlib
import random
import sys
from fractions import Fraction

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from circuit_ir.circuit import Circuit, CircuitBuilder  # noqa: E402
from circuit_ir.random_circuits import random_circuit  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def random_circuits():
    """Factory for seeded random valid circuits."""
    def make(count: int, seed: int = 0, max_size: int = 30, max_params: int = 2, max_inputs: int = 2):
        out = []
        for k in range(count):
            r = random.Random(seed * 1000 + k)
            out.append(random_circuit(r, r.randint(0, max_params), r.randint(1, max_inputs),
                                      r.randint(5, max_size)))
        return out
    return make


def square_plus_param() -> Circuit:
    """y = x1 * x1 + u1, one parameter and one input."""
    builder = CircuitBuilder(1, 1)
    x = builder.input(1)
    return builder.build([builder.add(builder.mul(x, x), builder.param(1))])


def divide_by_param_difference() -> Circuit:
    """y = x1 / (u1 - u2): consistent over affine space, not over u1 = u2."""
    builder = CircuitBuilder(2, 1)
    difference = builder.sub(builder.param(1), builder.param(2))
    return builder.build([builder.div(builder.input(1), difference)])


def write_json(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


ONE = Fraction(1)
