"""Test-only helpers: transcriptions parsed with sympy into the package types."""
from __future__ import annotations

import re
from fractions import Fraction

import sympy as sp

from hypersigma.algebra import Kind, Poly, Var
from hypersigma.diffop import DiffOp

_NAME = re.compile(r"^(z|l|d|e|p|tau|dl)(\d+)$")
_KINDS = {"z": Kind.Z, "l": Kind.LAMBDA, "e": Kind.E, "p": Kind.P, "tau": Kind.TAU}


def _symbol_var(s: sp.Symbol):
    m = _NAME.match(s.name)
    if not m:
        raise ValueError(f"unknown symbol {s}")
    head, idx = m.group(1), int(m.group(2))
    if head == "d":
        return "d", Var(Kind.Z, idx)
    if head == "dl":
        return "d", Var(Kind.LAMBDA, idx)
    return "x", Var(_KINDS[head], idx)


def _terms(expr):
    expr = sp.expand(sp.sympify(expr))
    gens = sorted(expr.free_symbols, key=lambda s: s.name)
    if not gens:
        yield {}, Fraction(str(expr))
        return
    for exps, c in sp.Poly(expr, *gens).terms():
        yield dict(zip(gens, exps)), Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1]))


def poly(expr, genus=None) -> Poly:
    """Polynomial from a sympy-parsable string in z1, l4, e2, p3, tau2 ..."""
    out = {}
    for exps, c in _terms(expr):
        mono = tuple(sorted((_symbol_var(s)[1], e) for s, e in exps.items() if e))
        out[mono] = out.get(mono, 0) + c
    return Poly(out, genus)


def op(expr, genus=None) -> DiffOp:
    """Normal-ordered operator from a string; d1, d3, ... and dl4, ... stand for derivatives
    and are understood to sit to the right of the coefficients."""
    out = {}
    for exps, c in _terms(expr):
        xs, ds = [], []
        for s, e in exps.items():
            if not e:
                continue
            kind, v = _symbol_var(s)
            (ds if kind == "d" else xs).append((v, e))
        key = (tuple(sorted(xs)), tuple(sorted(ds)))
        out[key] = out.get(key, 0) + c
    return DiffOp(out, genus)


def to_sympy(p: Poly):
    """Inverse direction, for sympy-side oracles."""
    prefix = {Kind.Z: "z", Kind.LAMBDA: "l", Kind.E: "e", Kind.P: "p", Kind.TAU: "tau"}
    acc = sp.Integer(0)
    for mono, c in p.items():
        t = sp.Rational(c.numerator, c.denominator)
        for v, e in mono:
            t *= sp.Symbol(f"{prefix[v.kind]}{v.index}") ** e
        acc += t
    return acc
