#!filepath: circuit_ir/parser.py
import json
import logging
import pathlib
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from algebra.errors import ScalarFormatError
from algebra.scalar import format_scalar, parse_scalar
from algebra.sparse_poly import SparsePoly
from .circuit import Circuit, Node, Op
from .domain import AffineSpace, Image, Localized, ParameterDomain, PointDomain
from .errors import CircuitParseError
from .models import CircuitModel, DomainModel, PolyModel

logger = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]


def _position(loc) -> str:
    """Turns a pydantic error location ('nodes', 3, 'index') into 'nodes[3].index'."""
    text = ""
    for part in loc:
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else str(part)
    return text


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitParseError(e.msg, f"line {e.lineno}, column {e.colno}") from e


def validated_model(model_cls, data: Any, prefix: str = ""):
    try:
        return model_cls.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = _position(first["loc"])
        position = f"{prefix}.{location}" if prefix and location else (prefix or location)
        raise CircuitParseError(first["msg"], position) from e


def scalar_at(text, position: str):
    try:
        return parse_scalar(str(text))
    except ScalarFormatError as e:
        raise CircuitParseError(str(e), position) from e


def circuit_from_model(model: CircuitModel) -> Circuit:
    """
    Converts a validated CircuitModel into a Circuit.

    Duplicate ids, out-of-range parameter/input indices, missing or malformed
    labels are rejected here; arity and ordering problems are left for validate().
    """
    seen: Dict[int, int] = {}
    nodes: List[Node] = []
    for k, raw in enumerate(model.nodes):
        where = f"nodes[{k}]"
        if raw.id in seen:
            raise CircuitParseError(f"duplicate node id {raw.id} (first at nodes[{seen[raw.id]}])", f"{where}.id")
        seen[raw.id] = k
        op = Op(raw.op)
        value = None
        if op == Op.SCALAR:
            if raw.value is None:
                raise CircuitParseError("scalar node needs a value", f"{where}.value")
            value = scalar_at(raw.value, f"{where}.value")
        elif raw.value is not None:
            raise CircuitParseError(f"{op.value} node cannot carry a value", f"{where}.value")
        if op in (Op.PARAM, Op.INPUT):
            limit = model.params if op == Op.PARAM else model.inputs
            if raw.index is None:
                raise CircuitParseError(f"{op.value} node needs an index", f"{where}.index")
            if not 1 <= raw.index <= limit:
                raise CircuitParseError(f"{op.value} index {raw.index} outside 1..{limit}", f"{where}.index")
        elif raw.index is not None:
            raise CircuitParseError(f"{op.value} node cannot carry an index", f"{where}.index")
        if not op.is_leaf and raw.args is None:
            raise CircuitParseError(f"{op.value} node needs args", f"{where}.args")
        nodes.append(Node(raw.id, op, value, raw.index, tuple(raw.args or ())))
    return Circuit(model.params, model.inputs, tuple(nodes), tuple(model.outputs))


def parse_circuit(text: str) -> Circuit:
    """
    Parses a circuit file.

    Raises:
        CircuitParseError: malformed JSON or content, with a position such as 'nodes[3].index'.
    """
    return circuit_from_model(validated_model(CircuitModel, load_json(text)))


def circuit_to_dict(circuit: Circuit) -> Dict[str, Any]:
    nodes = []
    for node in circuit.nodes:
        entry: Dict[str, Any] = {"id": node.id, "op": node.op.value}
        if node.op == Op.SCALAR:
            entry["value"] = format_scalar(node.value)
        if node.op in (Op.PARAM, Op.INPUT):
            entry["index"] = node.index
        if node.args:
            entry["args"] = list(node.args)
        nodes.append(entry)
    return {"params": circuit.params, "inputs": circuit.inputs, "nodes": nodes, "outputs": list(circuit.outputs)}


def serialize_circuit(circuit: Circuit, indent: Optional[int] = 2) -> str:
    return json.dumps(circuit_to_dict(circuit), indent=indent)


def load_circuit(path: PathLike) -> Circuit:
    path = pathlib.Path(path)
    logger.debug(f"Loading circuit from {path}")
    return parse_circuit(path.read_text(encoding="utf-8"))


def save_circuit(circuit: Circuit, path: PathLike) -> None:
    path = pathlib.Path(path)
    path.write_text(serialize_circuit(circuit) + "\n", encoding="utf-8")
    logger.info(f"Circuit with {circuit.size} nodes written to {path}")


def poly_from_model(model: PolyModel, nvars: int, position: str) -> SparsePoly:
    if len(model.vars) != nvars:
        raise CircuitParseError(f"expected {nvars} variables, got {len(model.vars)}", f"{position}.vars")
    terms = {}
    for k, term in enumerate(model.terms):
        if len(term.exp) != nvars:
            raise CircuitParseError(f"exponent has {len(term.exp)} entries, expected {nvars}",
                                    f"{position}.terms[{k}].exp")
        if any(e < 0 for e in term.exp):
            raise CircuitParseError("negative exponent", f"{position}.terms[{k}].exp")
        exponent = tuple(term.exp)
        terms[exponent] = terms.get(exponent, 0) + scalar_at(term.coef, f"{position}.terms[{k}].coef")
    return SparsePoly(nvars, terms)


def parse_poly(data: Any, nvars: Optional[int] = None) -> SparsePoly:
    """Parses the polynomial JSON form; nvars defaults to the length of 'vars'."""
    model = validated_model(PolyModel, data)
    return poly_from_model(model, len(model.vars) if nvars is None else nvars, "poly")


def domain_from_model(model: DomainModel) -> ParameterDomain:
    r = model.params
    if model.kind == "affine":
        return AffineSpace(r)
    if model.kind == "localized":
        generators = [poly_from_model(g, r, f"generators[{k}]") for k, g in enumerate(model.generators)]
        inequation = poly_from_model(model.inequation, r, "inequation") if model.inequation is not None else None
        return Localized(r, generators, inequation)
    if model.kind == "image":
        if model.source_dim is None:
            raise CircuitParseError("image domain needs source_dim", "source_dim")
        if len(model.map) != r:
            raise CircuitParseError(f"image map has {len(model.map)} components, expected {r}", "map")
        return Image(model.source_dim, [poly_from_model(p, model.source_dim, f"map[{k}]")
                                        for k, p in enumerate(model.map)])
    if len(model.point) != r:
        raise CircuitParseError(f"point has {len(model.point)} coordinates, expected {r}", "point")
    return PointDomain([scalar_at(v, f"point[{k}]") for k, v in enumerate(model.point)])


def parse_domain_data(data: Any) -> ParameterDomain:
    return domain_from_model(validated_model(DomainModel, data))


def parse_domain(text: str) -> ParameterDomain:
    return parse_domain_data(load_json(text))


def load_domain(path: PathLike) -> ParameterDomain:
    return parse_domain(pathlib.Path(path).read_text(encoding="utf-8"))


def serialize_domain(domain: ParameterDomain, indent: Optional[int] = 2) -> str:
    return json.dumps(domain.to_dict(), indent=indent)
