#!filepath: family/builders.py
"""
Circuits of the elimination family.

    H(T, U, X) = sum_i 2^(i-1) X_i + T * prod_i (1 + (U_i - 1) X_i)

At t = 0 the map X -> H is the binary encoding of the Boolean points, and at
t != 0 the product term shifts each encoded integer j by t * prod_{bit i of j} U_i.
"""
import logging
from fractions import Fraction
from typing import List, Sequence

from algebra.scalar import Scalar, to_scalar
from algebra.sparse_poly import SparsePoly
from circuit_ir.circuit import Circuit, CircuitBuilder

logger = logging.getLogger(__name__)


def emit_h(builder: CircuitBuilder, t: int, us: Sequence[int], xs: Sequence[int],
           duplicate_factor_chain: bool = False) -> int:
    """
    Appends H to `builder` over existing node ids and returns the id of its value.

    `xs` may be Input nodes or Scalar nodes (the latter for H evaluated at a
    fixed point). The product of the factors is a left-to-right chain of
    n - 1 multiplications.
    """
    n = len(xs)
    one = builder.scalar(Fraction(1))
    terms = [xs[0]]
    for i in range(1, n):
        terms.append(builder.mul(builder.scalar(Fraction(2) ** i), xs[i]))
    linear = builder.sum(terms)

    def factor_chain() -> int:
        factors = [builder.add(one, builder.mul(builder.sub(u, one), x)) for u, x in zip(us, xs)]
        return builder.prod(factors)

    shifted = builder.mul(t, factor_chain())
    if duplicate_factor_chain:
        twin = builder.mul(t, factor_chain())
        shifted = builder.mul(builder.add(shifted, twin), builder.scalar(Fraction(1, 2)))
    return builder.add(linear, shifted)


def build_H(n: int, duplicate_factor_chain: bool = False) -> Circuit:
    """
    H as a circuit with params (T, U_1..U_n) and inputs X_1..X_n.

    The circuit has n - 1 essential multiplications. With
    duplicate_factor_chain the factor product is computed twice and averaged;
    reduction merges the copies back.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    builder = CircuitBuilder(n + 1, n)
    t = builder.param(1)
    us = [builder.param(i + 2) for i in range(n)]
    xs = [builder.input(i + 1) for i in range(n)]
    out = emit_h(builder, t, us, xs, duplicate_factor_chain)
    circuit = builder.build([out])
    logger.debug(f"Built H for n={n} with {circuit.size} nodes")
    return circuit


def build_beta_n(n: int) -> Circuit:
    """
    The elimination instance: params (S_1..S_n, T, U_1..U_n), inputs X_1..X_n,
    outputs G_i = X_i^2 - X_i - S_i for each i followed by H.

    The node count is affine in n.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    builder = CircuitBuilder(2 * n + 1, n)
    xs = [builder.input(i + 1) for i in range(n)]
    ss = [builder.param(i + 1) for i in range(n)]
    t = builder.param(n + 1)
    us = [builder.param(n + 2 + i) for i in range(n)]
    outputs = []
    for x, s in zip(xs, ss):
        square = builder.mul(x, x)
        outputs.append(builder.sub(builder.sub(square, x), s))
    outputs.append(emit_h(builder, t, us, xs))
    return builder.build(outputs)


def build_G(n: int, i: int) -> Circuit:
    """G_i = X_i^2 - X_i - S_i alone, over params S_1..S_n and inputs X_1..X_n."""
    if not 1 <= i <= n:
        raise ValueError(f"G index {i} outside 1..{n}")
    builder = CircuitBuilder(n, n)
    x = builder.input(i)
    square = builder.mul(x, x)
    return builder.build([builder.sub(builder.sub(square, x), builder.param(i))])


def build_H_at(n: int, xi: Sequence[Scalar]) -> Circuit:
    """H(T, U, xi) for a fixed input point xi: params (T, U_1..U_n), no inputs."""
    if len(xi) != n:
        raise ValueError(f"Point has {len(xi)} coordinates, expected {n}")
    builder = CircuitBuilder(n + 1, 0)
    t = builder.param(1)
    us = [builder.param(i + 2) for i in range(n)]
    xs = [builder.scalar(value) for value in xi]
    return builder.build([emit_h(builder, t, us, xs)])


def h_value(t: Scalar, u: Sequence[Scalar], x: Sequence[Scalar]) -> Scalar:
    """Exact H(t, u, x) without building a circuit."""
    t = to_scalar(t)
    linear = sum((Fraction(2) ** i * to_scalar(v) for i, v in enumerate(x)), Fraction(0))
    prod = Fraction(1)
    for ui, xi in zip(u, x):
        prod = prod * (1 + (to_scalar(ui) - 1) * to_scalar(xi))
    return linear + t * prod


def h_poly(n: int) -> SparsePoly:
    """H as a polynomial in (T, U_1..U_n, X_1..X_n)."""
    nvars = 2 * n + 1
    t = SparsePoly.variable(nvars, 0)
    linear = SparsePoly.zero(nvars)
    prod = SparsePoly.one(nvars)
    for i in range(n):
        x = SparsePoly.variable(nvars, n + 1 + i)
        u = SparsePoly.variable(nvars, 1 + i)
        linear = linear + x.scale(Fraction(2) ** i)
        prod = prod * (1 + (u - 1) * x)
    return linear + t * prod


def h_at_point(n: int, xi: Sequence[Scalar]) -> SparsePoly:
    """H(T, U, xi) as a polynomial in (T, U_1..U_n)."""
    if len(xi) != n:
        raise ValueError(f"Point has {len(xi)} coordinates, expected {n}")
    nvars = n + 1
    prod = SparsePoly.variable(nvars, 0)
    linear = Fraction(0)
    for i, value in enumerate(xi):
        value = to_scalar(value)
        linear = linear + Fraction(2) ** i * value
        prod = prod * (SparsePoly.variable(nvars, 1 + i).scale(value) + (1 - value))
    return prod + linear


def boolean_encoding(epsilon: Sequence[int]) -> int:
    """j = sum_i 2^(i-1) eps_i: the value of H at t = 0."""
    return sum(bit << i for i, bit in enumerate(epsilon))


def multilinear_monomial(u: Sequence[Scalar], j: int) -> Scalar:
    """prod of u_i over the set bits i of j (bit 0 is u_1)."""
    value = Fraction(1)
    for i, ui in enumerate(u):
        if (j >> i) & 1:
            value = value * to_scalar(ui)
    return value


def roots(n: int, t: Scalar, u: Sequence[Scalar]) -> List[Scalar]:
    """The values of H(t, u, eps) for eps in {0,1}^n, ordered by binary encoding."""
    t = to_scalar(t)
    return [j + t * multilinear_monomial(u, j) for j in range(2 ** n)]
