#!filepath: tests/test_cost_model.py
import pytest

from circuit_ir import CircuitBuilder
from cost_model import cost, essential_parameters, parameter_audit
from family.builders import build_H
from lowerbound import naive_evaluator

from conftest import square_plus_param


@pytest.mark.parametrize("n", range(1, 13))
def test_h_uses_n_minus_one_essential_multiplications(n):
    report = cost(build_H(n))
    assert report.essential_mults == n - 1
    assert report.essential_divs == 0
    assert report.nonscalar_size == n - 1
    assert report.depth == n - 1


def test_h_parameter_multiplications():
    report = cost(build_H(3))
    assert report.param_mults == 4
    assert report.total_mults_nonscalar == 6
    assert report.essential_param_count == 4
    assert parameter_audit(build_H(3)).m == 4


def test_additions_are_free():
    builder = CircuitBuilder(1, 2)
    x1, x2 = builder.input(1), builder.input(2)
    out = builder.sub(builder.add(x1, x2), builder.add(x2, builder.param(1)))
    report = cost(builder.build([out]))
    assert report.nonscalar_size == 0
    assert report.total_depth == 2
    assert report.node_count == 6


def test_scalar_multiples_are_free():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    out = builder.div(builder.mul(builder.scalar(3), x), builder.scalar(7))
    report = cost(builder.build([out]))
    assert report.nonscalar_size == 0
    assert report.total_mults_nonscalar == 0


def test_essential_division_counts():
    builder = CircuitBuilder(0, 2)
    x1, x2 = builder.input(1), builder.input(2)
    out = builder.div(builder.mul(x1, x2), builder.add(x1, x2))
    report = cost(builder.build([out]))
    assert (report.essential_mults, report.essential_divs, report.nonscalar_size) == (1, 1, 2)
    assert report.depth == 2


def test_circuit_without_inputs_has_no_essential_parameters():
    builder = CircuitBuilder(2, 0)
    out = builder.mul(builder.param(1), builder.param(2))
    circuit = builder.build([out])
    assert parameter_audit(circuit).m == 0
    assert cost(circuit).nonscalar_size == 0


def test_constants_are_not_parameters():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    out = builder.mul(builder.add(builder.scalar(1), builder.scalar(2)), x)
    assert essential_parameters(builder.build([out])) == []
    assert parameter_audit(square_plus_param()).m == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_naive_evaluators_need_one_parameter_per_coefficient(n):
    for form in ("powers", "horner"):
        circuit = naive_evaluator(n, form)
        assert parameter_audit(circuit).m == 2 ** n
    assert cost(naive_evaluator(n, "powers")).essential_mults == 2 ** n - 1
    assert cost(naive_evaluator(n, "horner")).essential_mults == 2 ** n - 1

