#!filepath: approx/catalog.py
"""
Small circuits and germs with known approximative behaviour, shared by the
CLI demos and the reproduction suites.
"""
from fractions import Fraction
from typing import Optional

from circuit_ir.circuit import Circuit, CircuitBuilder

from .instance import ApproxInstance


def _square_numerator(builder: CircuitBuilder, p: int, x: int) -> int:
    """(1 + pX)^2 - 1 - 2pX, which is p^2 X^2."""
    one = builder.scalar(Fraction(1))
    px = builder.mul(p, x)
    shifted = builder.add(one, px)
    square = builder.mul(shifted, shifted)
    return builder.sub(builder.sub(square, one), builder.mul(builder.scalar(Fraction(2)), px))


def square_limit_circuit() -> Circuit:
    """y = ((1 + pi X)^2 - 1 - 2 pi X) / pi^2; represents X^2 along pi = eps."""
    builder = CircuitBuilder(1, 1)
    p, x = builder.param(1), builder.input(1)
    inverse = builder.div(builder.scalar(Fraction(1)), builder.mul(p, p))
    return builder.build([builder.mul(_square_numerator(builder, p, x), inverse)])


def linear_tail_circuit() -> Circuit:
    """y = ((1 + pi1 X)^2 - 1 - 2 pi1 X) / (pi1 pi2) = (pi1 / pi2) X^2."""
    builder = CircuitBuilder(2, 1)
    p1, p2, x = builder.param(1), builder.param(2), builder.input(1)
    inverse = builder.div(builder.scalar(Fraction(1)), builder.mul(p1, p2))
    return builder.build([builder.mul(_square_numerator(builder, p1, x), inverse)])


def pole_circuit() -> Circuit:
    """y = (1 / pi) X, with a simple pole along pi = eps."""
    builder = CircuitBuilder(1, 1)
    p, x = builder.param(1), builder.input(1)
    inverse = builder.div(builder.scalar(Fraction(1)), p)
    return builder.build([builder.mul(inverse, x)])


def epsilon_germ(precision: Optional[int] = None) -> ApproxInstance:
    """u(eps) = eps."""
    return ApproxInstance.from_coefficients([(1, [Fraction(1)])], precision=precision)


def shifted_germ(precision: Optional[int] = None) -> ApproxInstance:
    """u(eps) = eps + eps^2."""
    return ApproxInstance.from_coefficients([(1, [Fraction(1), Fraction(1)])], precision=precision)


def linear_tail_germ(precision: Optional[int] = None) -> ApproxInstance:
    """(u1, u2)(eps) = (eps + eps^2, eps): the linear tail circuit gives (1 + eps) X^2."""
    return ApproxInstance.from_coefficients([(1, [Fraction(1), Fraction(1)]), (1, [Fraction(1)])],
                                            precision=precision)


def constant_germ(values, precision: Optional[int] = None) -> ApproxInstance:
    return ApproxInstance.from_coefficients([(0, [Fraction(v)]) for v in values], precision=precision)
