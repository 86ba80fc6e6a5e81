from __future__ import annotations

from fractions import Fraction

import pytest

from hypersigma.algebra import GenusContext, Kind
from hypersigma.diffop import DiffOp, commutator, op_equal
from hypersigma.operators import (
    H_part,
    L_bracket_check,
    build_A,
    build_H,
    build_L,
    build_Q,
    delta_closed_form,
    lemma21_shape_check,
    rational_H,
    recursion_rational_limit_check,
    v_poly,
    witt_check,
)
from golden import H_TABLES
from oracle import op, poly


@pytest.mark.parametrize("g,k", [(g, k) for g, ops in H_TABLES.items() for k in range(len(ops))])
def test_explicit_H_matches_reference_table(g, k):
    assert op_equal(build_H(GenusContext(g), k), op(H_TABLES[g][k], g))


@pytest.mark.parametrize("g,k", [(g, k) for g, ops in H_TABLES.items() for k in range(len(ops))])
def test_recursion_reproduces_reference_H_for_low_k(g, k):
    assert op_equal(H_part(GenusContext(g), k), op(H_TABLES[g][k], g))


def test_H4_does_not_exist_in_genus_one():
    with pytest.raises(ValueError):
        build_H(GenusContext(1), 2)


def test_v_values():
    g1, g2 = GenusContext(1), GenusContext(2)
    assert v_poly(g1, 1, 1) == poly("4*l4", 1)
    assert v_poly(g1, 1, 2) == poly("6*l6", 1)
    assert v_poly(g2, 2, 2) == poly("8*l8 - 12*l4**2/5", 2)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_v_symmetric_and_homogeneous(g):
    ctx = GenusContext(g)
    for k in range(1, 2 * g + 1):
        for m in range(1, 2 * g + 1):
            v = v_poly(ctx, k, m)
            assert v == v_poly(ctx, m, k)
            assert v.is_homogeneous() and (not v or v.weight() == 2 * k + 2 * m)


def test_L_genus_one():
    ctx = GenusContext(1)
    assert build_L(ctx, 0) == op("4*l4*dl4 + 6*l6*dl6", 1)
    assert build_L(ctx, 1) == op("6*l6*dl4 - 4*l4**2*dl6/3", 1)


def test_L0_is_the_euler_field():
    ctx = GenusContext(2)
    assert build_L(ctx, 0).apply(poly("l4*l6", 2)) == poly("10*l4*l6", 2)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_L0_grades_every_L(g):
    ctx = GenusContext(g)
    for k in range(1, 2 * g):
        assert commutator(build_L(ctx, 0), build_L(ctx, k)) == build_L(ctx, k).scale(2 * k)


@pytest.mark.parametrize("g", [2, 3])
def test_Q0_grades_every_Q(g):
    ctx = GenusContext(g)
    for k in range(1, 2 * g):
        assert commutator(build_Q(ctx, 0), build_Q(ctx, k)) == build_Q(ctx, k).scale(2 * k)


def test_Q6_genus_two():
    ctx = GenusContext(2)
    q6 = build_Q(ctx, 3)
    assert q6.lambda_part() == build_L(ctx, 3)
    h6 = H_part(ctx, 3)
    constant = h6.filter(lambda m, d: not d and all(v.kind is Kind.LAMBDA for v, _ in m))
    assert constant == DiffOp.mult(poly("-l6/2", 2), 2)
    second = h6.filter(lambda m, d: sum(e for _, e in d) == 2)
    assert second == op("d3**2/2", 2)


def test_delta_values():
    assert delta_closed_form(GenusContext(2), 2) == poly("-l4", 2)
    assert delta_closed_form(GenusContext(1), 1) == 0
    assert delta_closed_form(GenusContext(3), 2) == poly("-3*l4", 3)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_recursion_output_has_schrodinger_shape(g):
    ctx = GenusContext(g)
    for k in range(2 * g):
        assert lemma21_shape_check(H_part(ctx, k), ctx, k).passed


def test_shape_check_rejects_a_wrong_constant():
    ctx = GenusContext(2)
    bad = H_part(ctx, 2) + DiffOp.mult(poly("l4", 2), 2)
    rep = lemma21_shape_check(bad, ctx, 2)
    assert not rep.passed and [c.name for c in rep.failures()] == ["delta"]


def test_A_examples():
    assert build_A(0, 2) == op("-z1*d1 - 3*z3*d3", 2)
    assert build_A(1, 2) == op("-d1**2/2 - z1*d3", 2)
    assert build_A(3, 2) == op("-d3**2/2", 2)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_rational_H_is_minus_A_up_to_constant(g):
    ctx = GenusContext(g)
    assert rational_H(ctx, 0) == -build_A(0, g) - Fraction(g * (g + 1), 2)
    for k in range(1, 2 * g):
        assert rational_H(ctx, k) == -build_A(k, g)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_recursion_rational_limit(g):
    assert recursion_rational_limit_check(GenusContext(g)).passed


def test_witt_relations():
    assert commutator(build_A(1, 4), build_A(2, 4)) == build_A(3, 4).scale(2)
    assert commutator(build_A(2, 4), build_A(2, 4)).is_zero()
    for k in range(1, 7):
        assert commutator(build_A(0, 4), build_A(k, 4)) == build_A(k, 4).scale(2 * k)
    assert witt_check(6, 4).passed


def test_witt_detects_a_wrong_structure_constant():
    res = commutator(build_A(1, 4), build_A(2, 4)) - build_A(3, 4).scale(3)
    assert not res.is_zero()


@pytest.mark.parametrize("g,k", [(g, k) for g in (2, 3, 4) for k in range(1, 2 * g - 1)])
def test_L_bracket_family(g, k):
    assert L_bracket_check(GenusContext(g), k).passed


def test_L_bracket_trivial_case():
    ctx = GenusContext(2)
    assert commutator(build_L(ctx, 1), build_L(ctx, 1)).is_zero()
