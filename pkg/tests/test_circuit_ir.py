#!filepath: tests/test_circuit_ir.py
import json
import random
from fractions import Fraction

import pytest

from algebra.sparse_poly import SparsePoly
from circuit_ir import (AffineSpace, Circuit, CircuitBuilder, CircuitParseError, EmptyDomainSuspected, Image,
                        InvalidCircuit, Localized, Node, Op, PointDomain, classify, essential_nodes,
                        is_essentially_division_free, is_totally_division_free, parse_circuit, parse_domain,
                        random_circuit, require_valid, serialize_circuit, serialize_domain, validate)
from family.builders import build_H


def test_single_input_is_valid():
    circuit = Circuit(0, 1, (Node(0, Op.INPUT, index=1),), (0,))
    assert validate(circuit).valid


def test_mul_with_one_argument_is_an_arity_violation():
    circuit = Circuit(0, 1, (Node(0, Op.INPUT, index=1), Node(1, Op.MUL, args=(0,))), (1,))
    report = validate(circuit)
    assert not report.valid
    assert report.kinds() == ["arity"]


def test_forward_reference_is_an_ordering_violation():
    nodes = (Node(0, Op.INPUT, index=1), Node(1, Op.ADD, args=(0, 2)), Node(2, Op.INPUT, index=1))
    report = validate(Circuit(0, 1, nodes, (1,)))
    assert "ordering" in report.kinds()
    assert any(v.node == 1 for v in report.violations)
    with pytest.raises(InvalidCircuit):
        require_valid(Circuit(0, 1, nodes, (1,)))


def test_dangling_node_is_reported_but_structurally_sound():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    builder.add(x, x)
    report = validate(builder.build([x]))
    assert report.kinds() == ["dangling"]
    assert report.structurally_sound


def test_index_range_and_missing_outputs():
    report = validate(Circuit(1, 0, (Node(0, Op.PARAM, index=2),), ()))
    assert {"index_range", "outputs"} <= set(report.kinds())


def test_h3_factor_chain_multiplications_are_essential():
    circuit = build_H(3)
    table = classify(circuit)
    essential_muls = [node.id for node in circuit.nodes if node.op == Op.MUL and table[node.id].is_essential]
    assert len(essential_muls) == 2
    t = circuit.param_nodes()[0]
    assert t.index == 1
    by_t = [node for node in circuit.nodes if node.op == Op.MUL and t.id in node.args]
    assert len(by_t) == 1 and not table[by_t[0].id].is_essential
    assert table[t.id].is_parameter_node


def test_no_inputs_means_every_node_is_a_parameter_node():
    builder = CircuitBuilder(2, 0)
    out = builder.mul(builder.param(1), builder.add(builder.param(2), builder.scalar(3)))
    table = classify(builder.build([out]))
    assert all(flags.is_parameter_node for flags in table.values())


def test_division_by_input_is_essential():
    builder = CircuitBuilder(1, 1)
    out = builder.div(builder.param(1), builder.input(1))
    circuit = builder.build([out])
    assert classify(circuit)[out].is_essential
    assert out in essential_nodes(circuit)
    assert not is_essentially_division_free(circuit)
    assert not is_totally_division_free(circuit)


def test_division_predicates():
    builder = CircuitBuilder(1, 1)
    half = builder.div(builder.input(1), builder.scalar(2))
    circuit = builder.build([half])
    assert is_totally_division_free(circuit)
    builder = CircuitBuilder(1, 1)
    by_param = builder.div(builder.input(1), builder.param(1))
    circuit = builder.build([by_param])
    assert not is_totally_division_free(circuit)
    assert is_essentially_division_free(circuit)


def test_parse_reports_positions():
    text = json.dumps({"params": 1, "inputs": 1, "outputs": [1],
                       "nodes": [{"id": 0, "op": "input", "index": 1},
                                 {"id": 1, "op": "param", "index": 3}]})
    with pytest.raises(CircuitParseError) as info:
        parse_circuit(text)
    assert "nodes[1].index" in str(info.value)

    with pytest.raises(CircuitParseError) as info:
        parse_circuit(json.dumps({"params": 0, "inputs": 1, "outputs": [0],
                                  "nodes": [{"id": 0, "op": "pow", "index": 1}]}))
    assert "nodes[0].op" in str(info.value)

    with pytest.raises(CircuitParseError):
        parse_circuit("{not json")


def test_serialize_then_parse_preserves_the_circuit():
    circuit = build_H(2)
    again = parse_circuit(serialize_circuit(circuit))
    assert again == circuit
    gaussian = parse_circuit(json.dumps({"params": 0, "inputs": 1, "outputs": [2], "nodes": [
        {"id": 0, "op": "input", "index": 1}, {"id": 1, "op": "scalar", "value": "1/2+1 i"},
        {"id": 2, "op": "mul", "args": [0, 1]}]}))
    assert "1/2+1 i" in serialize_circuit(gaussian)


def test_localized_domain_chart_and_sampling():
    u1, u2 = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    hyperbola = Localized(2, [u1 * u2 - 1])
    chart = hyperbola.chart()
    assert chart is not None and chart.source_dim == 1
    point = hyperbola.sample(random.Random(3), 50)
    assert hyperbola.contains(point)


def test_reducible_localized_domain_samples_its_components():
    u1, u2 = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    cross = Localized(2, [u1 * u2])
    assert cross.chart() is None
    components = cross.components()
    assert {c.generators[0] for c in components} == {u1, u2}
    rng = random.Random(1)
    points = [cross.sample(rng, 50) for _ in range(20)]
    assert all(cross.contains(p) for p in points)
    shifted = Localized(2, [u1 * u2 + u1])
    assert shifted.chart() is None
    assert {c.generators[0] for c in shifted.components()} == {u1, u2 + 1}
    assert Localized(1, [SparsePoly.one(1)]).components() == []


def test_localized_domain_without_points():
    u1 = SparsePoly.variable(1, 0)
    with pytest.raises(EmptyDomainSuspected):
        Localized(1, [u1], inequation=u1).sample(random.Random(0), 10)


def test_image_and_point_domains():
    s = SparsePoly.variable(1, 0)
    parabola = Image(1, [s, s * s])
    u = parabola.sample(random.Random(5), 20)
    assert u[1] == u[0] * u[0]
    assert parabola.contains(u) is None
    single = PointDomain([Fraction(1, 2), 3])
    assert single.sample(random.Random(0), 10) == (Fraction(1, 2), Fraction(3))
    assert AffineSpace(2).contains([1, 2])


def test_domain_files():
    domain = parse_domain(json.dumps({"kind": "localized", "params": 1,
                                      "generators": [{"vars": ["u1"], "terms": [{"exp": [1], "coef": "1"}]}]}))
    assert domain.contains([0]) and not domain.contains([1])
    again = parse_domain(serialize_domain(domain))
    assert again.contains([0])
    with pytest.raises(CircuitParseError) as info:
        parse_domain(json.dumps({"kind": "point", "params": 2, "point": ["1"]}))
    assert "point" in str(info.value)


def test_random_circuits_are_valid():
    for seed in range(30):
        rng = random.Random(seed)
        circuit = random_circuit(rng, rng.randint(0, 3), rng.randint(1, 3), rng.randint(5, 40))
        assert validate(circuit).valid
        assert circuit.outputs
