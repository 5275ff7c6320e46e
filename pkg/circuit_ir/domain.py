#!filepath: circuit_ir/domain.py
"""
Parameter domains: the set of admissible parameter points of a circuit.

Every domain can produce exact rational sample points from a seeded
random.Random and, where possible, a rational chart: r rational functions in
s source variables whose image is (a dense part of) the domain. Exact
consistency checks pull divisors back along the chart.
"""
from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from algebra.ratfunc import RatFunc
from algebra.scalar import Scalar, format_scalar, to_scalar
from algebra.sparse_poly import SparsePoly
from algebra.sympy_bridge import irreducible_factors
from .errors import EmptyDomainSuspected

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_TRIES = 64
MAX_COMPONENTS = 64


@dataclass(frozen=True)
class Chart:
    """Rational parameterization U = f(s) of a domain."""
    source_dim: int
    functions: Tuple[RatFunc, ...]

    def apply(self, source: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        """Raises ZeroDivisionError when some denominator vanishes at `source`."""
        return tuple(f.evaluate(source) for f in self.functions)


class ParameterDomain(ABC):
    kind: str = ""

    def __init__(self, params: int):
        self.params = params
        self._chart_cache: Any = None
        self._chart_done = False

    @abstractmethod
    def _build_chart(self) -> Optional[Chart]:
        ...

    def chart(self) -> Optional[Chart]:
        """The domain's rational chart, or None when no chart is known (non-triangular localized sets)."""
        if not self._chart_done:
            self._chart_cache = self._build_chart()
            self._chart_done = True
        return self._chart_cache

    @abstractmethod
    def contains(self, point: Sequence[Scalar]) -> Optional[bool]:
        """Exact membership test; None when membership cannot be decided (images)."""

    def ideal_generators(self) -> Optional[List[SparsePoly]]:
        """Polynomials over U1..Ur that vanish on the domain, or None when not known."""
        return []

    def inequation(self) -> SparsePoly:
        return SparsePoly.one(self.params)

    def sample(self, rng: random.Random, bound: int, max_tries: int = DEFAULT_SAMPLE_TRIES) -> Tuple[Scalar, ...]:
        """
        Draws one exact point: integer source coordinates in [-bound, bound]
        pushed through the chart, or plain rejection sampling without a chart.

        Raises:
            EmptyDomainSuspected: no admissible point within max_tries draws.
        """
        chart = self.chart()
        inequation = self.inequation()
        for _ in range(max_tries):
            if chart is not None:
                source = [Fraction(rng.randint(-bound, bound)) for _ in range(chart.source_dim)]
                try:
                    point = chart.apply(source)
                except ZeroDivisionError:
                    continue
                if inequation.evaluate(point) != 0:
                    return point
            else:
                point = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(self.params))
                if self.contains(point):
                    return point
        raise EmptyDomainSuspected(self.kind, max_tries)

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        ...

    def __repr__(self):
        return f"{type(self).__name__}(params={self.params})"


def _identity_functions(params: int) -> Tuple[RatFunc, ...]:
    return tuple(RatFunc.from_poly(SparsePoly.variable(params, i)) for i in range(params))


def _param_names(params: int) -> List[str]:
    return [f"u{i + 1}" for i in range(params)]


class AffineSpace(ParameterDomain):
    """All of the r-dimensional affine space."""
    kind = "affine"

    def _build_chart(self) -> Chart:
        return Chart(self.params, _identity_functions(self.params))

    def contains(self, point):
        return len(point) == self.params

    def to_dict(self):
        return {"kind": self.kind, "params": self.params}


class Localized(ParameterDomain):
    """
    Zero set of `generators` with the hypersurface P = 0 removed.

    A chart exists when the generators can be solved one after another for a
    variable occurring linearly with a constant coefficient, or with a
    nonzero constant remainder (binomials such as U1*U2 - 1). Reducible sets
    such as U1*U2 = 0 get no chart.
    """
    kind = "localized"

    def __init__(self, params: int, generators: Sequence[SparsePoly], inequation: Optional[SparsePoly] = None):
        super().__init__(params)
        for poly in list(generators) + ([inequation] if inequation is not None else []):
            if poly.nvars != params:
                raise ValueError(f"Domain polynomial {poly} has {poly.nvars} variables, expected {params}")
        self.generators = tuple(generators)
        self._inequation = inequation if inequation is not None else SparsePoly.one(params)
        self._components: Optional[List[Localized]] = None

    def ideal_generators(self):
        return list(self.generators)

    def inequation(self):
        return self._inequation

    def contains(self, point):
        point = [to_scalar(v) for v in point]
        return all(g.evaluate(point) == 0 for g in self.generators) and self._inequation.evaluate(point) != 0

    def components(self) -> List["Localized"]:
        """
        Sub-domains cut out by one irreducible factor per generator; their
        union is this domain. Empty when some generator is a nonzero constant,
        cannot be factored, or there are more than MAX_COMPONENTS choices.
        """
        if self._components is None:
            choices: List[List[SparsePoly]] = [[]]
            for generator in self.generators:
                if generator.is_zero():
                    continue
                factors = irreducible_factors(generator)
                if not factors or len(choices) * len(factors) > MAX_COMPONENTS:
                    self._components = []
                    return self._components
                choices = [chosen + [f] for chosen in choices for f in factors]
            self._components = [Localized(self.params, chosen, self._inequation) for chosen in choices]
        return self._components

    def sample(self, rng: random.Random, bound: int, max_tries: int = DEFAULT_SAMPLE_TRIES) -> Tuple[Scalar, ...]:
        """Without a chart, samples a randomly chosen component that has one."""
        if self.chart() is None:
            charted = []
            for component in self.components():
                try:
                    if component.chart() is not None:
                        charted.append(component)
                except EmptyDomainSuspected:
                    continue
            if charted:
                return rng.choice(charted).sample(rng, bound, max_tries)
        return super().sample(rng, bound, max_tries)

    def _build_chart(self) -> Optional[Chart]:
        r = self.params
        current: List[RatFunc] = list(_identity_functions(r))
        solved: Set[int] = set()
        for generator in self.generators:
            reduced = RatFunc.from_poly(generator).compose(current).num
            if reduced.is_zero():
                continue
            pivot = _linear_pivot(reduced, solved)
            if pivot is None:
                logger.debug(f"Generator {generator} has no linear pivot; no chart for this domain")
                return None
            variable, coefficient, rest = pivot
            solved.add(variable)
            substitution = list(_identity_functions(r))
            substitution[variable] = RatFunc(-rest, coefficient)
            current = [f.compose(substitution) for f in current]
        free = [i for i in range(r) if i not in solved]
        source = len(free)
        onto_source: List[RatFunc] = []
        for i in range(r):
            if i in free:
                onto_source.append(RatFunc.from_poly(SparsePoly.variable(source, free.index(i))))
            else:
                onto_source.append(RatFunc.constant(source, 0))
        functions = tuple(f.compose(onto_source) for f in current)
        if self._inequation.evaluate_with(list(functions), RatFunc.constant(source, 1)).is_zero():
            raise EmptyDomainSuspected(self.kind, 0)
        return Chart(source, functions)

    def to_dict(self):
        names = _param_names(self.params)
        return {
            "kind": self.kind,
            "params": self.params,
            "generators": [g.to_dict(names) for g in self.generators],
            "inequation": self._inequation.to_dict(names),
        }


def _linear_pivot(poly: SparsePoly, solved: Set[int]):
    """
    Finds a variable v with poly = a*U_v + b, a and b free of U_v.

    a must be a constant, or b a nonzero constant so that a cannot vanish on
    the zero set; any other pivot would drop the component a = b = 0.
    Constant a preferred.
    """
    candidates = []
    for variable in reversed(range(poly.nvars)):
        if variable in solved or poly.degree_in(variable) != 1:
            continue
        parts = poly.split([variable])
        coefficient = parts[(1,)]
        rest = parts.get((0,), SparsePoly.zero(poly.nvars))
        if not coefficient.is_constant() and not (rest.is_constant() and not rest.is_zero()):
            continue
        candidates.append((not coefficient.is_constant(), variable, coefficient, rest))
    if not candidates:
        return None
    _, variable, coefficient, rest = min(candidates, key=lambda c: (c[0], -c[1]))
    return variable, coefficient, rest


class Image(ParameterDomain):
    """Image of a polynomial map from source_dim-space; the map itself is the chart."""
    kind = "image"

    def __init__(self, source_dim: int, polynomial_map: Sequence[SparsePoly]):
        super().__init__(len(polynomial_map))
        for poly in polynomial_map:
            if poly.nvars != source_dim:
                raise ValueError(f"Map component {poly} has {poly.nvars} variables, expected {source_dim}")
        self.source_dim = source_dim
        self.map = tuple(polynomial_map)

    def _build_chart(self) -> Chart:
        return Chart(self.source_dim, tuple(RatFunc.from_poly(p) for p in self.map))

    def contains(self, point):
        return None

    def ideal_generators(self):
        return None

    def to_dict(self):
        names = [f"s{i + 1}" for i in range(self.source_dim)]
        return {"kind": self.kind, "params": self.params, "source_dim": self.source_dim,
                "map": [p.to_dict(names) for p in self.map]}


class PointDomain(ParameterDomain):
    """A single rational parameter point u0."""
    kind = "point"

    def __init__(self, point: Sequence[Scalar]):
        super().__init__(len(point))
        self.point = tuple(to_scalar(v) for v in point)

    def _build_chart(self) -> Chart:
        return Chart(0, tuple(RatFunc.constant(0, v) for v in self.point))

    def contains(self, point):
        return tuple(to_scalar(v) for v in point) == self.point

    def ideal_generators(self):
        return [SparsePoly.variable(self.params, i) - v for i, v in enumerate(self.point)]

    def sample(self, rng, bound, max_tries=DEFAULT_SAMPLE_TRIES):
        return self.point

    def to_dict(self):
        return {"kind": self.kind, "params": self.params, "point": [format_scalar(v) for v in self.point]}


def point(u0: Sequence[Scalar]) -> PointDomain:
    return PointDomain(u0)
