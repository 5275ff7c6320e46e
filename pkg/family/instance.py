#!filepath: family/instance.py
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from algebra.scalar import Scalar
from circuit_ir.circuit import Circuit
from circuit_ir.domain import Image

from .builders import build_beta_n, build_G, build_H
from .config import FamilySettings
from .identification import IdentificationReport, find_identification_points, xi_domain

logger = logging.getLogger(__name__)


@dataclass
class EliminationInstance:
    """
    Everything generated for one n: the H circuit, the G_i circuits, the
    combined elimination circuit and a verified identification point set.
    """
    n: int
    seed: int
    H: Circuit
    G: List[Circuit]
    beta: Circuit
    points: List[Tuple[Scalar, ...]]
    report: IdentificationReport
    _domain: Optional[Image] = field(default=None, repr=False)

    @property
    def domain(self) -> Image:
        """The image of Xi, the parameter domain of the point-evaluation problem."""
        if self._domain is None:
            self._domain = xi_domain(self.n, self.points)
        return self._domain


def build_instance(n: int, seed: int = 0, trials: Optional[int] = None,
                   settings: Optional[FamilySettings] = None) -> EliminationInstance:
    points, report = find_identification_points(n, seed, trials, settings)
    logger.info(f"Elimination instance for n={n}: {len(points)} identification points")
    return EliminationInstance(n, seed, build_H(n), [build_G(n, i) for i in range(1, n + 1)], build_beta_n(n),
                               points, report)
