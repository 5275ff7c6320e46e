#!filepath: tests/test_family.py
import random
from fractions import Fraction

import pytest
import sympy

from algebra.sparse_poly import SparsePoly
from family import (CeilingExceeded, F_coeff_T_jet, F_coeff_T_jet_symbolic, FamilySettings, Xi, boolean_encoding,
                    build_beta_n, build_formula, build_H_at, build_instance, eval_F, find_identification_points,
                    formula_growth, h_at_point, h_value, identity_sides, point_count, roots, theta, universal_size,
                    verify_elimination_identity, verify_identification)
from family.identification import coordinate_bits
from semantics import eval_point


@pytest.mark.parametrize("n", range(1, 5))
def test_elimination_identity(n):
    rng = random.Random(n)
    for _ in range(5):
        t = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        u = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)]
        lhs, rhs = identity_sides(n, t, u)
        assert lhs == rhs
        assert verify_elimination_identity(n, t, u)


def test_roots_follow_the_binary_encoding():
    assert boolean_encoding([1, 0, 1]) == 5
    assert roots(2, 0, [7, 9]) == [0, 1, 2, 3]
    assert roots(1, 2, [3]) == [2, 7]
    assert h_value(2, [3], [1]) == 7


def test_eliminant_at_t_zero_is_a_falling_factorial():
    y = sympy.symbols("y")
    for n in (1, 2, 3):
        expected = sympy.Poly(sympy.prod([y - j for j in range(2 ** n)]), y)
        poly = eval_F(n, 0, [5] * n)
        coefficients = {(k,): Fraction(int(v.p), int(v.q)) for (k,), v in expected.terms()}
        assert dict(poly.items()) == coefficients


def test_jets_for_n_equal_one():
    lam, lin = F_coeff_T_jet(1, [Fraction(3)])
    assert lam == (-1, 0)
    assert lin == (-4, 1)


def test_symbolic_jet_agrees_with_the_numeric_jet():
    rng = random.Random(2)
    for n in (1, 2, 3):
        jet = F_coeff_T_jet_symbolic(n)
        u = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
        lam, lin = F_coeff_T_jet(n, u)
        assert jet.lam == lam
        assert tuple(p.evaluate(u) for p in jet.L) == lin


def test_ceilings_are_enforced():
    settings = FamilySettings()
    settings.f_ceiling = 2
    settings.jet_ceiling = 1
    with pytest.raises(CeilingExceeded):
        eval_F(3, 0, [1, 1, 1], settings)
    with pytest.raises(CeilingExceeded):
        F_coeff_T_jet(2, [1, 1], settings)


def test_xi_encoding():
    assert Xi(1, [(Fraction(2),)], 1, [3]) == (Fraction(7),)
    circuit = build_H_at(1, [Fraction(2)])
    assert eval_point(circuit, [1, 3], []).outputs == (Fraction(7),)
    poly = h_at_point(1, [Fraction(2)])
    assert poly.evaluate([1, 3]) == 7


def test_theta_separates_polynomials():
    assert theta(1, 2, [3]) == (2, 5)
    assert theta(2, 0, [4, 5]) == (0, 1, 2, 0)
    assert theta(1, 1, [2]) != theta(1, 2, [2])


def test_beta_size_is_affine_in_n():
    sizes = [build_beta_n(n).size for n in range(1, 13)]
    assert all(sizes[k + 1] - 2 * sizes[k] + sizes[k - 1] == 0 for k in range(1, 11))
    circuit = build_beta_n(2)
    assert (circuit.params, circuit.inputs, len(circuit.outputs)) == (5, 2, 3)


def test_identification_point_counts():
    assert point_count(1) == 18
    assert point_count(3) == 146
    assert coordinate_bits(2) == 8


def test_identification_points_pass_their_checks():
    points, report = find_identification_points(2, seed=0, trials=100)
    assert len(points) == 66
    assert report.passed and report.bits_ok and report.collisions == 0
    assert report.span_certified and report.span_rank == 4


def test_degenerate_point_sets_fail_identification():
    points = [(Fraction(1), Fraction(1))] * point_count(2)
    report = verify_identification(2, points, trials=50)
    assert not report.passed
    assert report.span_rank == 1


def test_formula_constituents_and_growth():
    report = build_formula(2)
    assert report.constituents == 2 + 66 + 1
    assert report.total_size == report.g_size + report.xi_size + report.h_size
    growth = formula_growth(seed=0)
    assert growth.passed and growth.c > 0


def test_universal_family_size():
    size = universal_size(0, 3)
    assert size.point_count == 66
    assert size.params == 16
    with pytest.raises(ValueError):
        universal_size(-1, 2)


def test_instance_bundles_the_generated_circuits():
    instance = build_instance(1, seed=3, trials=40)
    assert len(instance.G) == 1 and instance.H.params == 2
    assert instance.domain.source_dim == 2
    assert instance.domain.params == point_count(1)
    assert len(instance.points) == point_count(1)


def test_symbolic_jet_for_n_equal_one():
    jet = F_coeff_T_jet_symbolic(1)
    assert jet.L[0] == SparsePoly(1, {(0,): Fraction(-1), (1,): Fraction(-1)})
    assert jet.L[1] == SparsePoly(1, {(0,): Fraction(1)})
