#!filepath: approx/instance.py
import logging
import pathlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple, Union

from algebra.config import AlgebraSettings
from algebra.errors import ArityMismatch
from algebra.laurent import TruncatedLaurent
from algebra.scalar import Scalar, format_scalar
from circuit_ir.domain import AffineSpace, ParameterDomain
from circuit_ir.parser import domain_from_model, load_domain, load_json, scalar_at, validated_model

from .errors import InstanceViolation
from .models import GermModel

logger = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]


@dataclass(frozen=True)
class ApproxInstance:
    """
    A parameter germ u(eps) = (u_1(eps), ..., u_r(eps)) with a target domain
    and the number of retained terms N per series.
    """
    entries: Tuple[TruncatedLaurent, ...]
    domain: ParameterDomain
    precision: int

    @classmethod
    def from_coefficients(cls, entries: Sequence[Tuple[int, Sequence[Scalar]]],
                          domain: Optional[ParameterDomain] = None,
                          precision: Optional[int] = None) -> "ApproxInstance":
        """Entries given as (order, coefficients); missing coefficients are exact zeros."""
        precision = precision or AlgebraSettings().laurent_precision
        series = []
        for k, (order, coeffs) in enumerate(entries):
            if len(coeffs) > precision:
                logger.warning(f"Germ entry {k} has {len(coeffs)} coefficients, keeping the first {precision}")
            series.append(TruncatedLaurent.from_coefficients(order, [Fraction(c) if isinstance(c, int) else c
                                                                     for c in coeffs], precision))
        domain = domain if domain is not None else AffineSpace(len(series))
        return cls(tuple(series), domain, precision)

    @property
    def params(self) -> int:
        return len(self.entries)

    def is_constant(self) -> bool:
        """No entry depends on epsilon."""
        return all(entry.is_polynomial_germ() for entry in self.entries)

    def _substitute(self, poly) -> TruncatedLaurent:
        one = TruncatedLaurent.constant(Fraction(1), self.precision)
        return poly.evaluate_with(list(self.entries), one)

    def check(self) -> None:
        """
        Every ideal generator of the domain must vanish at u(eps) up to the
        retained precision, and the inequation must not.

        Raises:
            ArityMismatch: the domain has a different parameter count.
            InstanceViolation: a generator does not vanish, the inequation
                vanishes, or the domain has no ideal description.
        """
        if self.domain.params != self.params:
            raise ArityMismatch(self.domain.params, self.params)
        generators = self.domain.ideal_generators()
        if generators is None:
            raise InstanceViolation(f"A {self.domain.kind} domain has no ideal description to check the germ against")
        for k, generator in enumerate(generators):
            if not self._substitute(generator).is_zero_like():
                raise InstanceViolation(f"Generator {k} does not vanish along the germ", k)
        if self._substitute(self.domain.inequation()).is_zero_like():
            raise InstanceViolation("The inequation vanishes along the germ")

    def to_dict(self) -> dict:
        return {
            "entries": [{"order": e.order, "coeffs": [format_scalar(c) for c in e.coefficients]}
                        for e in self.entries],
            "domain": self.domain.to_dict(),
            "precision": self.precision,
        }


def germ_from_model(model: GermModel, base_dir: Optional[pathlib.Path] = None,
                    precision: Optional[int] = None) -> ApproxInstance:
    entries = []
    for k, entry in enumerate(model.entries):
        coeffs = [scalar_at(c, f"entries[{k}].coeffs[{j}]") for j, c in enumerate(entry.coeffs)]
        entries.append((entry.order, coeffs))
    domain = None
    if isinstance(model.domain, str):
        path = pathlib.Path(model.domain)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        domain = load_domain(path)
    elif model.domain is not None:
        domain = domain_from_model(model.domain)
    return ApproxInstance.from_coefficients(entries, domain, precision or model.precision)


def parse_germ_data(data: Any, base_dir: Optional[pathlib.Path] = None,
                    precision: Optional[int] = None) -> ApproxInstance:
    return germ_from_model(validated_model(GermModel, data), base_dir, precision)


def parse_germ(text: str, base_dir: Optional[pathlib.Path] = None, precision: Optional[int] = None) -> ApproxInstance:
    return parse_germ_data(load_json(text), base_dir, precision)


def load_germ(path: PathLike, precision: Optional[int] = None) -> ApproxInstance:
    """Loads a germ file; a relative domain path is resolved against the germ file's directory."""
    path = pathlib.Path(path)
    return parse_germ(path.read_text(encoding="utf-8"), path.parent, precision)
