"""Linear differential operators with polynomial coefficients.

An operator is stored in normal order: every term is ``c * x^A * d^B`` with
the coefficient monomial ``x^A`` to the left of the derivative monomial
``d^B``.  Derivatives may be taken in any variable, z or lambda, so the same
type covers the Schrodinger operators, the parameter vector fields and plain
multiplication operators.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Iterator, Mapping

from .algebra import (
    Kind,
    Monomial,
    Poly,
    Q,
    Var,
    _falling,
    _merge_genus,
    mono_lambda_weight,
    mono_mul,
    mono_sort_key,
    mono_weight,
)

DerivMonomial = tuple  # tuple[tuple[Var, int], ...], sorted by Var


def _mono_sub(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        r = d[v] - e
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _divides(b: Monomial, a: Monomial) -> bool:
    d = dict(a)
    return all(d.get(v, 0) >= e for v, e in b)


class DiffOp:
    """Immutable differential operator; terms map (x-monomial, d-monomial) -> coefficient."""

    __slots__ = ("_terms", "genus")

    def __init__(self, terms: Mapping[tuple[Monomial, DerivMonomial], Fraction] | None = None,
                 genus: int | None = None):
        self._terms = {k: Q(c) for k, c in (terms or {}).items() if c}
        self.genus = genus

    @classmethod
    def _raw(cls, terms: dict, genus: int | None) -> "DiffOp":
        op = cls.__new__(cls)
        op._terms = terms
        op.genus = genus
        return op

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, genus: int | None = None) -> "DiffOp":
        return cls._raw({((), ()): Q(1)}, genus)

    @classmethod
    def zero(cls, genus: int | None = None) -> "DiffOp":
        return cls._raw({}, genus)

    @classmethod
    def mult(cls, p: Poly | int | Fraction, genus: int | None = None) -> "DiffOp":
        """Multiplication operator by ``p``."""
        if not isinstance(p, Poly):
            p = Poly.const(p, genus)
        return cls._raw({(m, ()): c for m, c in p.terms.items()}, _merge_genus(genus, p.genus))

    @classmethod
    def partial(cls, v: Var, order: int = 1, genus: int | None = None) -> "DiffOp":
        return cls._raw({((), ((v, order),)): Q(1)}, genus)

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Poly, DerivMonomial]], genus: int | None = None
                   ) -> "DiffOp":
        """Sum of ``coefficient * d^B`` for (coefficient, B) pairs."""
        out: dict = {}
        for coeff, d in pairs:
            genus = _merge_genus(genus, coeff.genus)
            d = tuple(sorted(d))
            for m, c in coeff.terms.items():
                k = (m, d)
                out[k] = out.get(k, 0) + c
        return cls._raw({k: c for k, c in out.items() if c}, genus)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[Monomial, DerivMonomial], Fraction]:
        return self._terms

    def deriv_monomials(self) -> list[DerivMonomial]:
        return sorted({d for _, d in self._terms}, key=mono_sort_key)

    def coefficient(self, d: DerivMonomial | Iterable[tuple[Var, int]]) -> Poly:
        d = tuple(sorted(d))
        return Poly._raw({m: c for (m, dd), c in self._terms.items() if dd == d}, self.genus)

    def grouped(self) -> list[tuple[DerivMonomial, Poly]]:
        """(d-monomial, coefficient polynomial) pairs in canonical order."""
        groups: dict[DerivMonomial, dict] = {}
        for (m, d), c in self._terms.items():
            groups.setdefault(d, {})[m] = c
        return [(d, Poly._raw(groups[d], self.genus))
                for d in sorted(groups, key=mono_sort_key)]

    def __iter__(self) -> Iterator[tuple[DerivMonomial, Poly]]:
        return iter(self.grouped())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        return max((sum(e for _, e in d) for _, d in self._terms), default=-1)

    def weight(self):
        """Common weight (coefficient weight minus derivative weight) or None."""
        ws = {mono_weight(m) - mono_weight(d) for m, d in self._terms}
        if len(ws) == 1:
            return ws.pop()
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffOp):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from .render import op_text

        return f"DiffOp({op_text(self)!r})"

    # -- linear structure --------------------------------------------------

    def __add__(self, other) -> "DiffOp":
        if isinstance(other, (Poly, int, Fraction)):
            other = DiffOp.mult(other, self.genus)
        if not isinstance(other, DiffOp):
            return NotImplemented
        genus = _merge_genus(self.genus, other.genus)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DiffOp._raw(out, genus)

    __radd__ = __add__

    def __neg__(self) -> "DiffOp":
        return DiffOp._raw({k: -c for k, c in self._terms.items()}, self.genus)

    def __sub__(self, other) -> "DiffOp":
        if isinstance(other, (Poly, int, Fraction)):
            other = DiffOp.mult(other, self.genus)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DiffOp":
        return (-self) + other

    def scale(self, c) -> "DiffOp":
        c = Q(c)
        if not c:
            return DiffOp.zero(self.genus)
        return DiffOp._raw({k: v * c for k, v in self._terms.items()}, self.genus)

    def __mul__(self, other) -> "DiffOp":
        """Scalar multiple, or composition when ``other`` is an operator/polynomial."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly):
            other = DiffOp.mult(other)
        if isinstance(other, DiffOp):
            return self.compose(other)
        return NotImplemented

    def __rmul__(self, other) -> "DiffOp":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly):
            return self.left_multiply(other)
        return NotImplemented

    def left_multiply(self, p: Poly) -> "DiffOp":
        """The operator ``p * self`` (cheap: coefficients are already on the left)."""
        genus = _merge_genus(self.genus, p.genus)
        out: dict = {}
        for (m, d), c in self._terms.items():
            for pm, pc in p.terms.items():
                k = (mono_mul(pm, m), d)
                out[k] = out.get(k, 0) + c * pc
        return DiffOp._raw({k: c for k, c in out.items() if c}, genus)

    # -- action and composition ---------------------------------------------

    def apply(self, p: Poly) -> Poly:
        genus = _merge_genus(self.genus, p.genus)
        out: dict = {}
        for (a, b), c in self._terms.items():
            for m, pc in p.terms.items():
                if b:
                    md = dict(m)
                    f = 1
                    for v, k in b:
                        e = md.get(v, 0)
                        if e < k:
                            f = 0
                            break
                        f *= _falling(e, k)
                        if e == k:
                            del md[v]
                        else:
                            md[v] = e - k
                    if not f:
                        continue
                    rest = tuple(sorted(md.items()))
                    coeff = c * pc * f
                else:
                    rest = m
                    coeff = c * pc
                key = mono_mul(a, rest)
                out[key] = out.get(key, 0) + coeff
        return Poly._raw({m: c for m, c in out.items() if c}, genus)

    def __call__(self, p: Poly) -> Poly:
        return self.apply(p)

    def compose(self, other: "DiffOp") -> "DiffOp":
        """``self o other`` brought back to normal order by the Leibniz rule."""
        genus = _merge_genus(self.genus, other.genus)
        out: dict = {}
        for (a, b), c1 in self._terms.items():
            bd = dict(b)
            for (cm, d), c2 in other._terms.items():
                common = [(v, min(bd[v], e)) for v, e in cm if v in bd]
                if not common:
                    key = (mono_mul(a, cm), mono_mul(b, d))
                    out[key] = out.get(key, 0) + c1 * c2
                    continue
                cmd = dict(cm)
                for ks in product(*(range(top + 1) for _, top in common)):
                    f = 1
                    kmono = []
                    for (v, _), k in zip(common, ks):
                        if k:
                            f *= comb(bd[v], k) * _falling(cmd[v], k)
                            kmono.append((v, k))
                    kmono = tuple(kmono)
                    key = (mono_mul(a, _mono_sub(cm, kmono)),
                           mono_mul(_mono_sub(b, kmono), d))
                    out[key] = out.get(key, 0) + c1 * c2 * f
        return DiffOp._raw({k: c for k, c in out.items() if c}, genus)

    # -- restrictions -------------------------------------------------------

    def filter(self, pred) -> "DiffOp":
        """Keep the terms (x-monomial, d-monomial) for which ``pred`` holds."""
        return DiffOp._raw({k: c for k, c in self._terms.items() if pred(*k)}, self.genus)

    def rational_limit(self) -> "DiffOp":
        """Set lambda = 0 in the coefficients."""
        return self.filter(lambda m, d: all(v.kind is not Kind.LAMBDA for v, _ in m))

    def lambda_part(self) -> "DiffOp":
        """Terms that differentiate in some lambda."""
        return self.filter(lambda m, d: any(v.kind is Kind.LAMBDA for v, _ in d))

    def z_part(self) -> "DiffOp":
        """Terms free of lambda-derivatives."""
        return self.filter(lambda m, d: all(v.kind is not Kind.LAMBDA for v, _ in d))

    def lambda_shift_part(self, shift: int) -> "DiffOp":
        """Terms raising the lambda-weight of their argument by exactly ``shift``."""
        return self.filter(lambda m, d: mono_lambda_weight(m) - mono_lambda_weight(d) == shift)

    def truncate(self, max_lambda_weight: int) -> "DiffOp":
        return self.filter(lambda m, d: mono_lambda_weight(m) <= max_lambda_weight)

    def with_genus(self, genus: int | None) -> "DiffOp":
        return DiffOp._raw(self._terms, genus)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b) - b.compose(a)


def op_equal(a: DiffOp, b: DiffOp) -> bool:
    _merge_genus(a.genus, b.genus)
    return a == b
