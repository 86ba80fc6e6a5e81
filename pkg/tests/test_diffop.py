from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hypersigma.algebra import GenusContext, Kind, Poly, Var
from hypersigma.diffop import DiffOp, commutator, op_equal
from hypersigma.operators import build_A, build_H, build_L
from oracle import op, poly

Z1, Z3, L4 = Var(Kind.Z, 1), Var(Kind.Z, 3), Var(Kind.LAMBDA, 4)


@st.composite
def ops(draw, max_terms=4):
    acc = DiffOp.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 3)))
        coeff = Poly.const(c)
        for v in (Z1, Z3, L4):
            e = draw(st.integers(0, 2))
            if e:
                coeff = coeff * Poly.var(v, exp=e)
        d = tuple((v, e) for v in (Z1, Z3, L4) if (e := draw(st.integers(0, 2))))
        acc = acc + DiffOp.from_terms([(coeff, d)])
    return acc


@st.composite
def polys(draw):
    acc = Poly.zero()
    for _ in range(draw(st.integers(0, 4))):
        term = Poly.const(draw(st.integers(-5, 5)))
        for v in (Z1, Z3, L4):
            term = term * Poly.var(v, exp=draw(st.integers(0, 3)))
        acc = acc + term
    return acc


def test_euler_operator_kills_z1():
    assert op("z1*d1 - 1", 1).apply(poly("z1", 1)) == 0


def test_rational_h2_kills_m2():
    assert op("d1**2/2 + z1*d3", 2).apply(poly("z1**3 - 3*z3", 2)) == 0


def test_identity():
    p = poly("z1**2*l4 - z3")
    assert DiffOp.identity().apply(p) == p


def test_composition_product_rule():
    d1, z1 = DiffOp.partial(Z1), DiffOp.mult(Poly.var(Z1))
    assert d1.compose(z1) == op("z1*d1") + DiffOp.identity()
    dl, l4 = DiffOp.partial(L4), DiffOp.mult(Poly.var(L4))
    lhs = DiffOp.mult(Poly.var(L4)).compose(dl).compose(l4)
    assert lhs == op("l4**2*dl4 + l4")


def test_canonical_commutation():
    assert commutator(DiffOp.partial(Z1), DiffOp.mult(Poly.var(Z1))) == DiffOp.identity()


def test_witt_example_and_euler_weight():
    assert commutator(build_A(1, 4), build_A(2, 4)) == build_A(3, 4).scale(2)
    ctx = GenusContext(2)
    assert commutator(build_L(ctx, 0), DiffOp.mult(ctx.lam(4))) == DiffOp.mult(ctx.lam(4).scale(4))


def test_op_equal():
    assert op_equal(op("d1*d3"), op("d3*d1"))
    ctx = GenusContext(2)
    assert op_equal(build_H(ctx, 0), op("z1*d1 + 3*z3*d3 - 3", 2))
    assert not op_equal(build_H(ctx, 1), build_H(ctx, 2))


@settings(max_examples=60)
@given(ops(), ops(), polys())
def test_compose_agrees_with_successive_application(a, b, p):
    assert a.compose(b).apply(p) == a.apply(b.apply(p))


@settings(max_examples=40)
@given(ops(), ops(), ops())
def test_jacobi_identity(a, b, c):
    total = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a))
             + commutator(c, commutator(a, b)))
    assert total.is_zero()


@settings(max_examples=60)
@given(ops(), ops(), ops())
def test_commutator_bilinear_and_antisymmetric(a, b, c):
    assert commutator(a + b, c) == commutator(a, c) + commutator(b, c)
    assert commutator(a, b) == -commutator(b, a)
