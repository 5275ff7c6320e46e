#!filepath: transforms/errors.py
from algebra.errors import CircuitLabError


class TransformError(CircuitLabError):
    """Base class for circuit transformation errors."""


class InconsistentJoin(TransformError):
    """The joined circuit divides by a function vanishing identically on the domain."""

    def __init__(self, node: int, circuit=None):
        super().__init__(f"Join is inconsistent: division at node {node} by an identically zero function")
        self.node = node
        self.circuit = circuit


class InconsistentBroadcast(TransformError):
    """The rewritten circuit divides by a function vanishing identically on the domain."""

    def __init__(self, node: int, circuit=None):
        super().__init__(f"Broadcast is inconsistent: division at node {node} by an identically zero function")
        self.node = node
        self.circuit = circuit


class RewriteChangedResults(TransformError):
    """A broadcast template did not preserve the final results of the circuit."""

    def __init__(self, message: str = "Broadcast changed the final results of the circuit"):
        super().__init__(message)
