#!filepath: approx/errors.py
from typing import Optional

from algebra.errors import CircuitLabError


class ApproxError(CircuitLabError):
    """Base class for approximative evaluation errors."""


class NonParameterDivision(ApproxError):
    """A division node depends on an input, so X-coefficients would leave the polynomial ring."""

    def __init__(self, node: int):
        super().__init__(f"Division at node {node} is not a parameter node")
        self.node = node


class InstanceViolation(ApproxError):
    """The parameter germ does not lie on the target domain."""

    def __init__(self, message: str, generator: Optional[int] = None):
        super().__init__(message)
        self.generator = generator


class NotHolomorphic(ApproxError):
    """
    An output series has a pole at epsilon = 0.

    Attributes:
        order: the most negative output order.
        node: the output node carrying it.
        first_pole_node: the earliest node it depends on with a negative order.
    """

    def __init__(self, order: int, node: int, first_pole_node: Optional[int] = None):
        super().__init__(f"Output node {node} has order {order} (pole first seen at node {first_pole_node})")
        self.order = order
        self.node = node
        self.first_pole_node = first_pole_node


class WitnessExhausted(ApproxError):
    """Evaluation failed at every epsilon_k of a witness table."""

    def __init__(self, k_max: int):
        super().__init__(f"Evaluation failed at every epsilon_k for k = 1..{k_max}")
        self.k_max = k_max


class EmptyCloud(ApproxError):
    """Membership asked of a coefficient cloud without points."""
