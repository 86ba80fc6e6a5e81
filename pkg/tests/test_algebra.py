from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersigma.algebra import (
    ANY_WEIGHT,
    NON_HOMOGENEOUS,
    ContextMismatch,
    GenusContext,
    Kind,
    Poly,
    Var,
    weighted_partitions,
)
from oracle import poly, to_sympy

Z1, Z3, L4, L6 = Var(Kind.Z, 1), Var(Kind.Z, 3), Var(Kind.LAMBDA, 4), Var(Kind.LAMBDA, 6)
VARS = [Z1, Z3, L4, L6]


@st.composite
def polys(draw, max_terms=5):
    acc = Poly.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
        term = Poly.const(c)
        for v in VARS:
            e = draw(st.integers(0, 3))
            if e:
                term = term * Poly.var(v, exp=e)
        acc = acc + term
    return acc


def test_difference_of_squares():
    ctx = GenusContext(2)
    assert (ctx.z(1) + ctx.z(3)) * (ctx.z(1) - ctx.z(3)) == ctx.z(1, 2) - ctx.z(3, 2)


def test_cancellation_leaves_single_term():
    assert poly("z1**3 - 3*z3") + poly("3*z3") == poly("z1**3")


def test_weight_of_product_adds():
    p = poly("l4*z1**2") * poly("l6*z3")
    assert p == poly("l4*l6*z1**2*z3")
    assert p.weight() == 5


def test_derivatives():
    assert poly("z1**3").diff(Z1) == poly("3*z1**2")
    assert poly("z1**3 - 3*z3").diff(Z3) == -3
    assert poly("l4**2*z3").diff(L4) == poly("2*l4*z3")


def test_weights():
    assert poly("z1**3 - 3*z3").weight() == -3
    assert poly("l4*z1**7").weight() == -3
    assert poly("z1 + z1**2").weight() is NON_HOMOGENEOUS
    assert Poly.zero().weight() is ANY_WEIGHT


def test_graded_component():
    p = poly("z1 + l4*z1**5/60")
    assert p.graded_component(0) == poly("z1")
    assert p.graded_component(4) == poly("l4*z1**5/60")
    assert p.graded_component(2) == 0


def test_genus_context_variables():
    ctx = GenusContext(3)
    assert ctx.z_indices == (1, 3, 5)
    assert ctx.lambda_indices == tuple(range(4, 16, 2))
    assert ctx.sigma_weight == -6
    assert ctx.lam(2) == 0 and ctx.lam(0) == 1


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        GenusContext(2).z(1) + GenusContext(3).z(1)


def test_weighted_partitions_count_odd_parts():
    # partitions of 6 into parts 1, 3, 5
    assert len(list(weighted_partitions(6, (1, 3, 5)))) == 4


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=50)
@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert sp.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys(), polys(), st.sampled_from(VARS))
def test_leibniz_rule(a, b, v):
    assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


@given(polys(), st.sampled_from(VARS))
def test_derivative_matches_sympy(a, v):
    name = {Kind.Z: "z", Kind.LAMBDA: "l"}[v.kind] + str(v.index)
    assert sp.expand(to_sympy(a.diff(v)) - sp.diff(to_sympy(a), sp.Symbol(name))) == 0


@given(polys(), polys())
def test_truncated_product_is_truncation_of_product(a, b):
    assert a.mul(b, 8) == (a * b).truncate(8)


@given(polys())
def test_strata_reassemble(a):
    total = Poly.zero()
    for w, part in a.strata().items():
        assert part.lambda_weights() == {w}
        total = total + part
    assert total == a


@given(polys(), polys())
def test_homogeneous_products_stay_homogeneous(a, b):
    ha = Poly({m: c for m, c in a.items() if sum(v.weight * e for v, e in m) == -1})
    hb = Poly({m: c for m, c in b.items() if sum(v.weight * e for v, e in m) == 2})
    prod = ha * hb
    assert prod.weight() in (1, ANY_WEIGHT)


@given(polys())
def test_substitution_by_self_is_identity(a):
    assert a.subs({v: Poly.var(v) for v in VARS}) == a
