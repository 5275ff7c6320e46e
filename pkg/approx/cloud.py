#!filepath: approx/cloud.py
"""
Sampled coefficient clouds: coefficient vectors of a circuit's final results
at sampled parameter points. Distances to the cloud are evidence, never proof,
that a vector lies in its closure.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from algebra.errors import ArityMismatch
from algebra.scalar import GaussianRational, Scalar, to_scalar
from algebra.sparse_poly import SparsePoly
from circuit_ir.circuit import Circuit
from circuit_ir.domain import AffineSpace, ParameterDomain
from circuit_ir.errors import EmptyDomainSuspected
from circuit_ir.validate import require_valid
from semantics.config import SemanticsSettings
from semantics.sampling import CLOUD_STREAM, SplitRandom

from .config import ApproxSettings
from .errors import EmptyCloud
from .evaluate import eval_in_x, require_parameter_divisions

logger = logging.getLogger(__name__)

BasisKey = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class CoefficientCloud:
    """
    basis lists (output index, monomial exponent) pairs; each point is the
    coefficient vector of all outputs on that basis.
    """
    inputs: int
    outputs: int
    basis: Tuple[BasisKey, ...]
    points: Tuple[Tuple[Scalar, ...], ...]
    samples: Tuple[Tuple[Scalar, ...], ...]
    seed: int

    @property
    def arity(self) -> int:
        return len(self.basis)

    def vector(self, polys: Sequence[SparsePoly]) -> Tuple[Tuple[Scalar, ...], float]:
        """
        Coordinates of polynomials on the basis, plus the squared weight of
        the coefficients that fall outside it.
        """
        if len(polys) != self.outputs:
            raise ArityMismatch(self.outputs, len(polys))
        outside = 0.0
        index = {key: k for k, key in enumerate(self.basis)}
        coords: List[Scalar] = [Fraction(0)] * len(self.basis)
        for output, poly in enumerate(polys):
            if poly.nvars != self.inputs:
                raise ArityMismatch(self.inputs, poly.nvars)
            for exponent, coefficient in poly.items():
                key = (output, exponent)
                if key in index:
                    coords[index[key]] = coefficient
                else:
                    outside += abs(_as_complex(coefficient)) ** 2
        return tuple(coords), outside


def _as_complex(value: Scalar) -> complex:
    if isinstance(value, GaussianRational):
        return complex(float(value.re), float(value.im))
    return complex(float(value), 0.0)


def sample_cloud(circuit: Circuit, domain: Optional[ParameterDomain] = None, size: Optional[int] = None,
                 seed: int = 0) -> CoefficientCloud:
    """
    Evaluates the circuit at `size` seeded parameter points of the domain,
    skipping points where a division fails.
    """
    require_valid(circuit)
    require_parameter_divisions(circuit)
    size = size if size is not None else ApproxSettings().cloud_size
    domain = domain if domain is not None else AffineSpace(circuit.params)
    if domain.params != circuit.params:
        raise ArityMismatch(circuit.params, domain.params)
    split = SplitRandom(seed).child(CLOUD_STREAM)
    bound = SemanticsSettings().sample_bound

    results = []
    for index in range(size):
        try:
            u = domain.sample(split.child(index).rng(), bound)
        except EmptyDomainSuspected:
            logger.warning(f"No domain point found for cloud sample {index}")
            continue
        values = eval_in_x(circuit, u)
        if values is None:
            logger.debug(f"Cloud sample {index} hit a vanishing divisor, skipping")
            continue
        results.append((tuple(u), values))

    keys = sorted({(output, exponent) for _, values in results
                   for output, poly in enumerate(values) for exponent, _ in poly.items()})
    positions = {key: k for k, key in enumerate(keys)}
    points = []
    for _, values in results:
        coords: List[Scalar] = [Fraction(0)] * len(keys)
        for output, poly in enumerate(values):
            for exponent, coefficient in poly.items():
                coords[positions[(output, exponent)]] = coefficient
        points.append(tuple(coords))
    logger.info(f"Coefficient cloud: {len(points)} points on a basis of {len(keys)} monomials")
    return CoefficientCloud(circuit.inputs, len(circuit.outputs), tuple(keys), tuple(points),
                            tuple(u for u, _ in results), seed)


class MembershipReport(BaseModel):
    """
    Pydantic model for the distance from a coefficient vector to a sampled cloud.
    """
    distance: float = Field(..., description="Euclidean distance to the nearest sampled point")
    nearest: int = Field(..., description="Index of the nearest sampled point")
    exact_member: bool = Field(..., description="The vector equals a sampled point exactly")
    within_radius: Optional[bool] = None
    cloud_size: int


def cloud_membership(cloud: CoefficientCloud, h: Union[Sequence[Scalar], Sequence[SparsePoly]],
                     radius: Optional[float] = None) -> MembershipReport:
    """
    h is either a coefficient vector on the cloud's basis or one polynomial per output.

    Raises:
        EmptyCloud: the cloud has no points.
        ArityMismatch: h does not fit the cloud's basis or outputs.
    """
    if not cloud.points:
        raise EmptyCloud("The coefficient cloud has no points")
    if h and isinstance(h[0], SparsePoly):
        vector, outside = cloud.vector(h)
    else:
        if len(h) != cloud.arity:
            raise ArityMismatch(cloud.arity, len(h))
        vector, outside = tuple(to_scalar(v) for v in h), 0.0

    exact = [k for k, p in enumerate(cloud.points) if outside == 0.0 and p == vector]
    if exact:
        return MembershipReport(distance=0.0, nearest=exact[0], exact_member=True,
                                within_radius=True if radius is not None else None, cloud_size=len(cloud.points))
    points = np.array([[_as_complex(v) for v in p] for p in cloud.points], dtype=complex)
    points = points.reshape(len(cloud.points), cloud.arity)
    target = np.array([_as_complex(v) for v in vector], dtype=complex)
    distances = np.sqrt(np.sum(np.abs(points - target) ** 2, axis=1) + outside)
    nearest = int(np.argmin(distances))
    distance = float(distances[nearest])
    return MembershipReport(distance=distance, nearest=nearest, exact_member=False,
                            within_radius=(distance <= radius) if radius is not None else None,
                            cloud_size=len(cloud.points))
