#!filepath: circuit_ir/errors.py
from algebra.errors import CircuitLabError


class CircuitError(CircuitLabError):
    """Base class for structural circuit errors."""


class InvalidCircuit(CircuitError):
    """Raised when an operation needs a structurally valid circuit and gets something else."""

    def __init__(self, report):
        first = report.violations[0] if report.violations else None
        detail = f": {first.message}" if first else ""
        super().__init__(f"Invalid circuit ({len(report.violations)} violations){detail}")
        self.report = report


class CycleDetected(CircuitError):
    """Raised when a rewrite would introduce a dependency cycle."""

    def __init__(self, nodes):
        super().__init__(f"Dependency cycle through nodes {sorted(nodes)}")
        self.nodes = sorted(nodes)


class CircuitParseError(CircuitError):
    """Raised for malformed circuit, domain or polynomial files. `position` is a path like 'nodes[3].index'."""

    def __init__(self, message: str, position: str = None):
        super().__init__(f"{position}: {message}" if position else message)
        self.position = position


class EmptyDomainSuspected(CircuitError):
    """Raised when a parameter domain yields no sample point within the retry budget."""

    def __init__(self, kind: str, attempts: int):
        super().__init__(f"No point of the {kind} domain found after {attempts} attempts; the domain may be empty")
        self.kind = kind
        self.attempts = attempts
