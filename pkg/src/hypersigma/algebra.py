"""Exact graded polynomial ring over the rationals.

Polynomials are sparse maps from monomials to :class:`fractions.Fraction`
coefficients.  A monomial is a tuple of ``(Var, exponent)`` pairs sorted by
variable, so equal polynomials always have identical term maps.

Variables carry a weight: ``wt z_k = -k``, ``wt lambda_k = k``,
``wt e_k = wt p_k = -k``.  The parameters ``lambda_s`` outside the genus
window are identically zero and ``lambda_0 = 1``; :class:`GenusContext`
takes care of that when it hands out variables.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Q = Fraction

__all__ = [
    "ANY_WEIGHT",
    "NON_HOMOGENEOUS",
    "ContextMismatch",
    "GenusContext",
    "InconsistencyError",
    "Kind",
    "Monomial",
    "Poly",
    "Q",
    "Var",
    "mono_mul",
    "mono_weight",
]


class ContextMismatch(ValueError):
    """Operands were built for different genera."""


class InconsistencyError(RuntimeError):
    """A linear system that must have a unique solution did not."""


class Kind(enum.IntEnum):
    """Variable families, in canonical block order."""

    Z = 0
    LAMBDA = 1
    E = 2
    P = 3
    TAU = 4
    TAUSTAR = 5
    X1 = 6
    X2 = 7
    X3 = 8


_TEXT_NAME = {
    Kind.Z: "z",
    Kind.LAMBDA: "lambda",
    Kind.E: "e",
    Kind.P: "p",
    Kind.TAU: "tau",
    Kind.TAUSTAR: "taustar",
    Kind.X1: "x1_",
    Kind.X2: "x2_",
    Kind.X3: "x3_",
}


class Var(NamedTuple):
    kind: Kind
    index: int

    @property
    def weight(self) -> int:
        k = self.kind
        if k is Kind.LAMBDA:
            return self.index
        if k in (Kind.X1, Kind.X2, Kind.X3):
            return (k - Kind.X1 + 1) + self.index
        if k in (Kind.TAU, Kind.TAUSTAR):
            return -(2 * self.index - 1)
        return -self.index

    @property
    def name(self) -> str:
        return f"{_TEXT_NAME[self.kind]}{self.index}"

    def __repr__(self) -> str:
        return self.name


Monomial = tuple  # tuple[tuple[Var, int], ...], sorted by Var
Scalar = Union[int, Fraction]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_weight(m: Monomial) -> int:
    return sum(v.weight * e for v, e in m)


def mono_lambda_weight(m: Monomial) -> int:
    return sum(v.index * e for v, e in m if v.kind is Kind.LAMBDA)


def mono_degree(m: Monomial, kinds: Iterable[Kind] | None = None) -> int:
    if kinds is None:
        return sum(e for _, e in m)
    kinds = set(kinds)
    return sum(e for v, e in m if v.kind in kinds)


_SENTINEL = ((Var(Kind(len(Kind) - 1), 10**9), 0),)


def mono_sort_key(m: Monomial) -> tuple:
    """Ascending key that lists monomials in descending lex order of their
    exponent vectors (z1^6 before z1^3*z3 before z3^2; constants last)."""
    return tuple((v, -e) for v, e in m) + _SENTINEL


class _Marker:
    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


ANY_WEIGHT = _Marker("ANY_WEIGHT")
NON_HOMOGENEOUS = _Marker("NON_HOMOGENEOUS")


def _merge_genus(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ContextMismatch(f"genus {a} operand combined with genus {b} operand")


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


class Poly:
    """Immutable sparse polynomial with rational coefficients.

    ``genus`` tags the context the polynomial was built in; ``None`` means
    context-free (symmetric functions, tau variables, numeric constants).
    """

    __slots__ = ("_terms", "genus")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None,
                 genus: int | None = None):
        if terms:
            self._terms = {m: Q(c) for m, c in terms.items() if c != 0}
        else:
            self._terms = {}
        self.genus = genus

    @classmethod
    def _raw(cls, terms: dict, genus: int | None) -> "Poly":
        # terms already canonical, nonzero and Fraction-valued
        p = cls.__new__(cls)
        p._terms = terms
        p.genus = genus
        return p

    @classmethod
    def const(cls, c: Scalar, genus: int | None = None) -> "Poly":
        return cls._raw({(): Q(c)} if c else {}, genus)

    @classmethod
    def var(cls, v: Var, genus: int | None = None, exp: int = 1) -> "Poly":
        if exp < 0:
            raise ValueError("negative exponent")
        return cls._raw({((v, exp),) if exp else (): Q(1)}, genus)

    @classmethod
    def zero(cls, genus: int | None = None) -> "Poly":
        return cls._raw({}, genus)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda t: mono_sort_key(t[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial | Iterable[tuple[Var, int]]) -> Fraction:
        return self._terms.get(tuple(sorted(mono)), Q(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((), Q(0))

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def degree(self, kinds: Iterable[Kind] | None = None) -> int:
        if not self._terms:
            return -1
        kinds = None if kinds is None else tuple(kinds)
        return max(mono_degree(m, kinds) for m in self._terms)

    def weight(self):
        """Common weight, ``ANY_WEIGHT`` for zero, ``NON_HOMOGENEOUS`` otherwise."""
        ws = {mono_weight(m) for m in self._terms}
        if not ws:
            return ANY_WEIGHT
        if len(ws) == 1:
            return ws.pop()
        return NON_HOMOGENEOUS

    def is_homogeneous(self) -> bool:
        return self.weight() is not NON_HOMOGENEOUS

    def lambda_weights(self) -> set[int]:
        return {mono_lambda_weight(m) for m in self._terms}

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        from math import gcd, lcm

        if not self._terms:
            return Q(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Q(num, den)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Q(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from .render import poly_text

        return f"Poly({poly_text(self)!r})"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.genus)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        genus = _merge_genus(self.genus, other.genus)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(out, genus)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()}, self.genus)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        c = Q(c)
        if not c:
            return Poly.zero(self.genus)
        return Poly._raw({m: v * c for m, v in self._terms.items()}, self.genus)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "Poly":
        return self.scale(Q(1) / Q(c))

    def mul(self, other: "Poly", max_lambda_weight: int | None = None) -> "Poly":
        """Product; with ``max_lambda_weight`` set, drop every product term whose
        lambda-weight exceeds the bound."""
        genus = _merge_genus(self.genus, other.genus)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        if max_lambda_weight is None:
            for mb, cb in b.items():
                for ma, ca in a.items():
                    m = mono_mul(ma, mb)
                    out[m] = out.get(m, 0) + ca * cb
        else:
            wa = {m: mono_lambda_weight(m) for m in a}
            for mb, cb in b.items():
                budget = max_lambda_weight - mono_lambda_weight(mb)
                if budget < 0:
                    continue
                for ma, ca in a.items():
                    if wa[ma] > budget:
                        continue
                    m = mono_mul(ma, mb)
                    out[m] = out.get(m, 0) + ca * cb
        return Poly._raw({m: c for m, c in out.items() if c}, genus)

    def __pow__(self, n: int) -> "Poly":
        return self.power(n)

    def power(self, n: int, max_lambda_weight: int | None = None) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.genus)
        base = self
        while n:
            if n & 1:
                result = result.mul(base, max_lambda_weight)
            n >>= 1
            if n:
                base = base.mul(base, max_lambda_weight)
        return result

    # -- calculus and structure -------------------------------------------

    def diff(self, v: Var, order: int = 1) -> "Poly":
        out = {}
        for m, c in self._terms.items():
            rest = []
            e = 0
            for w, k in m:
                if w == v:
                    e = k
                else:
                    rest.append((w, k))
            if e < order:
                continue
            if e > order:
                rest.append((v, e - order))
                rest.sort()
            out[tuple(rest)] = c * _falling(e, order)
        return Poly._raw(out, self.genus)

    def graded_component(self, lambda_weight: int) -> "Poly":
        return Poly._raw({m: c for m, c in self._terms.items()
                          if mono_lambda_weight(m) == lambda_weight}, self.genus)

    def truncate(self, max_lambda_weight: int | None) -> "Poly":
        if max_lambda_weight is None:
            return self
        return Poly._raw({m: c for m, c in self._terms.items()
                          if mono_lambda_weight(m) <= max_lambda_weight}, self.genus)

    def strata(self) -> dict[int, "Poly"]:
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            out.setdefault(mono_lambda_weight(m), {})[m] = c
        return {w: Poly._raw(t, self.genus) for w, t in sorted(out.items())}

    def rational_limit(self) -> "Poly":
        """Set every lambda to zero."""
        return Poly._raw({m: c for m, c in self._terms.items()
                          if all(v.kind is not Kind.LAMBDA for v, _ in m)}, self.genus)

    def subs(self, mapping: Mapping[Var, "Poly | Scalar"],
             max_lambda_weight: int | None = None) -> "Poly":
        """Simultaneous substitution of variables by polynomials."""
        images = {v: (p if isinstance(p, Poly) else Poly.const(p)) for v, p in mapping.items()}
        genus = self.genus
        for p in images.values():
            genus = _merge_genus(genus, p.genus)
        cache: dict[tuple[Var, int], Poly] = {}

        def img_pow(v: Var, e: int) -> Poly:
            key = (v, e)
            if key not in cache:
                cache[key] = images[v].power(e, max_lambda_weight)
            return cache[key]

        out: dict = {}
        for m, c in self._terms.items():
            kept = tuple((v, e) for v, e in m if v not in images)
            term = Poly._raw({kept: c}, genus)
            for v, e in m:
                if v in images:
                    term = term.mul(img_pow(v, e), max_lambda_weight)
                    if not term:
                        break
            for tm, tc in term._terms.items():
                out[tm] = out.get(tm, 0) + tc
        return Poly._raw({m: c for m, c in out.items() if c}, genus)

    def with_genus(self, genus: int | None) -> "Poly":
        return Poly._raw(self._terms, genus)

    def map_coefficients(self, f) -> "Poly":
        return Poly._raw({m: Q(f(c)) for m, c in self._terms.items() if f(c)}, self.genus)

    def split_by(self, kinds: Iterable[Kind]) -> dict[Monomial, "Poly"]:
        """Group terms by their sub-monomial in ``kinds``; values hold the rest."""
        kinds = set(kinds)
        out: dict[Monomial, dict] = {}
        for m, c in self._terms.items():
            key = tuple((v, e) for v, e in m if v.kind in kinds)
            rest = tuple((v, e) for v, e in m if v.kind not in kinds)
            out.setdefault(key, {})[rest] = c
        return {k: Poly._raw(t, self.genus) for k, t in out.items()}


def binomial(n: int, k: int) -> int:
    return comb(n, k)


@dataclass(frozen=True)
class GenusContext:
    """Genus ``g`` with its ``g`` z-variables and ``2g`` curve parameters."""

    g: int

    def __post_init__(self):
        if not isinstance(self.g, int) or self.g < 1:
            raise ValueError(f"genus must be a positive integer, got {self.g!r}")

    @cached_property
    def z_indices(self) -> tuple[int, ...]:
        return tuple(range(1, 2 * self.g, 2))

    @cached_property
    def lambda_indices(self) -> tuple[int, ...]:
        return tuple(range(4, 4 * self.g + 3, 2))

    @property
    def z_vars(self) -> list[Var]:
        return [Var(Kind.Z, i) for i in self.z_indices]

    @property
    def lambda_vars(self) -> list[Var]:
        return [Var(Kind.LAMBDA, i) for i in self.lambda_indices]

    @property
    def sigma_weight(self) -> int:
        return -self.g * (self.g + 1) // 2

    def z_var(self, i: int) -> Var:
        if i not in self.z_indices:
            raise ValueError(f"z{i} is not a coordinate in genus {self.g}")
        return Var(Kind.Z, i)

    def lambda_var(self, i: int) -> Var:
        if i not in self.lambda_indices:
            raise ValueError(f"lambda{i} is not a parameter in genus {self.g}")
        return Var(Kind.LAMBDA, i)

    def z(self, i: int, exp: int = 1) -> Poly:
        return Poly.var(self.z_var(i), self.g, exp)

    def lam(self, i: int) -> Poly:
        """lambda_i as a polynomial: 1 for i = 0, zero outside the window."""
        if i == 0:
            return self.one
        if i in self.lambda_indices:
            return Poly.var(Var(Kind.LAMBDA, i), self.g)
        return self.zero

    @property
    def one(self) -> Poly:
        return Poly.const(1, self.g)

    @property
    def zero(self) -> Poly:
        return Poly.zero(self.g)

    def const(self, c: Scalar) -> Poly:
        return Poly.const(c, self.g)

    def contains(self, v: Var) -> bool:
        if v.kind is Kind.Z:
            return v.index in self.z_indices
        if v.kind is Kind.LAMBDA:
            return v.index in self.lambda_indices
        return False

    def check(self, p: Poly) -> Poly:
        if p.genus is not None and p.genus != self.g:
            raise ContextMismatch(f"polynomial of genus {p.genus} used in genus {self.g}")
        bad = [v for v in p.variables() if not self.contains(v)]
        if bad:
            raise ValueError(f"variables {bad} do not belong to genus {self.g}")
        return p.with_genus(self.g)


def weighted_partitions(total: int, parts: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Exponent vectors e with sum(e[i] * parts[i]) == total, in lexicographic
    order (first coordinate varies slowest, descending)."""
    parts = tuple(parts)

    def rec(i: int, rest: int) -> Iterator[tuple[int, ...]]:
        if i == len(parts) - 1:
            if rest % parts[i] == 0:
                yield (rest // parts[i],)
            return
        for e in range(rest // parts[i], -1, -1):
            for tail in rec(i + 1, rest - e * parts[i]):
                yield (e,) + tail

    if total < 0:
        return iter(())
    if not parts:
        return iter([()] if total == 0 else [])
    return rec(0, total)


def monomial_from_exponents(vars_: Iterable[Var], exps: Iterable[int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in zip(vars_, exps) if e))
