#!filepath: semantics/fingerprint.py
"""
Schwartz-Zippel fingerprints of circuits.

Sample point i of a run is drawn from the stream (seed, FINGERPRINT_STREAM, i),
so two circuits with the same arities and domain see the same points and can
be compared pointwise. Coordinates are integers in [-B, B]: two distinct
results of degree d agree at a random point with probability at most d/(2B+1).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.scalar import Scalar, scalar_sort_key
from circuit_ir.circuit import Circuit
from circuit_ir.domain import AffineSpace, ParameterDomain
from circuit_ir.validate import require_valid
from .config import SemanticsSettings
from .errors import FingerprintExhausted, FingerprintMismatch
from .evaluate import eval_partial, eval_point
from .sampling import FINGERPRINT_STREAM, NODE_TABLE_STREAM, SplitRandom, random_integers

logger = logging.getLogger(__name__)

Point = Tuple[Tuple[Scalar, ...], Tuple[Scalar, ...]]


@dataclass(frozen=True)
class Fingerprint:
    seed: int
    params: int
    inputs: int
    domain_kind: str
    indices: Tuple[int, ...]
    points: Tuple[Point, ...]
    results: Tuple[Tuple[Scalar, ...], ...]
    attempts: int

    @property
    def k(self) -> int:
        return len(self.indices)

    def result_at(self, index: int) -> Optional[Tuple[Scalar, ...]]:
        for i, result in zip(self.indices, self.results):
            if i == index:
                return result
        return None


def sample_point(circuit_params: int, circuit_inputs: int, domain: ParameterDomain, split: SplitRandom,
                 index: int, bound: int) -> Point:
    rng = split.child(index).rng()
    u = domain.sample(rng, bound)
    x = random_integers(rng, circuit_inputs, bound)
    return tuple(u), tuple(x)


def fingerprint(circuit: Circuit, seed: int = 0, k: Optional[int] = None, domain: Optional[ParameterDomain] = None,
                settings: Optional[SemanticsSettings] = None) -> Fingerprint:
    """
    Evaluates the circuit at k seeded sample points, skipping points where a
    division fails and drawing replacements (bounded by the resample budget).

    Raises:
        FingerprintExhausted: fewer than the configured floor of points evaluated.
    """
    require_valid(circuit)
    settings = settings or SemanticsSettings()
    k = k if k is not None else settings.fingerprint_points
    domain = domain or AffineSpace(circuit.params)
    split = SplitRandom(seed).child(FINGERPRINT_STREAM)
    limit = k + settings.resample_retries

    def evaluate(index: int):
        u, x = sample_point(circuit.params, circuit.inputs, domain, split, index, settings.sample_bound)
        trace = eval_point(circuit, u, x, raise_on_failure=False)
        return index, (u, x), trace.outputs

    indices, points, results = [], [], []
    next_index = 0
    with ThreadPoolExecutor(max_workers=settings.workers) as executor:
        while len(indices) < k and next_index < limit:
            batch = range(next_index, min(limit, next_index + (k - len(indices))))
            next_index = batch.stop
            for index, point, outputs in executor.map(evaluate, batch):
                if outputs is None:
                    logger.debug(f"Sample point {index} failed to evaluate, resampling")
                    continue
                indices.append(index)
                points.append(point)
                results.append(tuple(outputs))
    floor = min(settings.fingerprint_floor, k)
    if len(indices) < floor:
        raise FingerprintExhausted(len(indices), floor, next_index)
    return Fingerprint(seed, circuit.params, circuit.inputs, domain.kind, tuple(indices), tuple(points),
                       tuple(results), next_index)


def equal_results(f1: Fingerprint, f2: Fingerprint, floor: Optional[int] = None) -> bool:
    """
    Compares the multisets of output values at every sample index both
    fingerprints evaluated.

    Raises:
        FingerprintMismatch: different seeds, arities or domains, or fewer common points than the floor.
    """
    if (f1.seed, f1.params, f1.inputs, f1.domain_kind) != (f2.seed, f2.params, f2.inputs, f2.domain_kind):
        raise FingerprintMismatch("Fingerprints were taken over different sample streams")
    floor = floor if floor is not None else min(SemanticsSettings().fingerprint_floor, f1.k, f2.k)
    common = sorted(set(f1.indices) & set(f2.indices))
    if len(common) < floor:
        raise FingerprintMismatch(f"Only {len(common)} common sample points, floor is {floor}")
    for index in common:
        a = sorted(f1.result_at(index), key=scalar_sort_key)
        b = sorted(f2.result_at(index), key=scalar_sort_key)
        if a != b:
            logger.debug(f"Results differ at sample point {index}")
            return False
    return True


def node_value_table(circuit: Circuit, seed: int = 0, k: Optional[int] = None,
                     domain: Optional[ParameterDomain] = None,
                     settings: Optional[SemanticsSettings] = None) -> Dict[int, Tuple[Optional[Scalar], ...]]:
    """
    Per-node value vectors over k seeded sample points (None where a division
    failed upstream). Equal vectors nominate nodes with identical intermediate results.
    """
    settings = settings or SemanticsSettings()
    k = k if k is not None else settings.fingerprint_points
    domain = domain or AffineSpace(circuit.params)
    split = SplitRandom(seed).child(NODE_TABLE_STREAM)

    def evaluate(index: int):
        u, x = sample_point(circuit.params, circuit.inputs, domain, split, index, settings.sample_bound)
        return eval_partial(circuit, u, x)

    with ThreadPoolExecutor(max_workers=settings.workers) as executor:
        runs: List[Dict[int, Optional[Scalar]]] = list(executor.map(evaluate, range(k)))
    return {node.id: tuple(run[node.id] for run in runs) for node in circuit.nodes}


def fingerprints_agree(circuits: Sequence[Circuit], seed: int = 0, k: Optional[int] = None,
                       domain: Optional[ParameterDomain] = None) -> bool:
    """equal_results across a list of circuits sharing arities."""
    prints = [fingerprint(c, seed, k, domain) for c in circuits]
    return all(equal_results(prints[0], p) for p in prints[1:])
