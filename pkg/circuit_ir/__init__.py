#!filepath: circuit_ir/__init__.py
from .circuit import BINARY_OPS, LEAF_OPS, Circuit, CircuitBuilder, Node, Op, toposort_nodes
from .classify import (NodeClass, classify, constant_values, division_nodes, essential_nodes,
                       is_essentially_division_free, is_totally_division_free)
from .domain import AffineSpace, Chart, Image, Localized, ParameterDomain, PointDomain, point
from .errors import CircuitError, CircuitParseError, CycleDetected, EmptyDomainSuspected, InvalidCircuit
from .parser import (circuit_to_dict, load_circuit, load_domain, parse_circuit, parse_domain, parse_domain_data,
                     parse_poly, save_circuit, serialize_circuit, serialize_domain)
from .validate import ValidationReport, Violation, require_valid, validate
from .random_circuits import random_circuit
