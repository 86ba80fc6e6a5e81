"""Sigma series, Weierstrass-type functions, KdV and the polynomial dynamical systems.

The series sigma(z, lambda) is built stratum by stratum in the lambda-weight.
Stratum 0 is m_g; on stratum w the heat equations Q_2k sigma = 0 read

    H^_2k sigma_w = [Q_2k sigma_{<w}]_w,      k = 1 .. 2g-1,

(the k = 0 equation holds automatically by homogeneity), and the system is
solved separately for every lambda-monomial.

Functions of sigma are kept as ``numerator / sigma^power`` and identities are
checked after clearing denominators.  With a truncated series only the
lambda-strata up to the bound are asserted: every operation used here
(products, z-derivatives, the fields L_2k) never lowers the lambda-weight, so
those strata are exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Mapping

from .algebra import (
    GenusContext,
    InconsistencyError,
    Kind,
    Monomial,
    Poly,
    Q,
    Var,
    monomial_from_exponents,
    weighted_partitions,
)
from .diffop import DiffOp
from .linalg import EchelonForm
from .operators import build_H, build_L, build_Q
from .rational import solve_m, z_monomials
from .report import Report


# -- the series ----------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """sigma with all lambda-strata up to ``max_lambda_weight`` (and none above)."""
    g: int
    poly: Poly
    max_lambda_weight: int

    def stratum(self, w: int) -> Poly:
        if w > self.max_lambda_weight:
            raise ValueError(f"stratum {w} lies beyond the truncation bound {self.max_lambda_weight}")
        return self.poly.graded_component(w)

    @property
    def ctx(self) -> GenusContext:
        return GenusContext(self.g)


def lambda_monomials(ctx: GenusContext, w: int) -> list[Monomial]:
    return [monomial_from_exponents(ctx.lambda_vars, exps)
            for exps in weighted_partitions(w, ctx.lambda_indices)]


def _shift0_ops(ctx: GenusContext) -> list[DiffOp]:
    """H^_2k for k = 1..2g-1, read off as minus the lambda-neutral part of Q_2k."""
    return [-build_Q(ctx, k).lambda_shift_part(0) for k in range(1, 2 * ctx.g)]


@dataclass
class StratumSystem:
    """Linear map sigma_w -> (H^_2 sigma_w, ..., H^_{4g-2} sigma_w) on one z-weight."""
    basis: list
    rows: dict = field(default_factory=dict)  # (k, z-monomial) -> {unknown: coeff}
    rank: int = 0


@lru_cache(maxsize=None)
def _stratum_system(g: int, z_weight: int) -> StratumSystem:
    ctx = GenusContext(g)
    basis = z_monomials(g, z_weight)
    sys_ = StratumSystem(basis)
    for k, op in enumerate(_shift0_ops(ctx), start=1):
        for j, m in enumerate(basis):
            for t, c in op.apply(Poly._raw({m: Q(1)}, g)).terms.items():
                row = sys_.rows.setdefault((k, t), {})
                row[j] = row.get(j, 0) + c
    ech = EchelonForm(len(basis))
    for row in sys_.rows.values():
        ech.add(row)
    sys_.rank = ech.rank
    return sys_


@lru_cache(maxsize=None)
def sigma_series(g: int, max_lambda_weight: int) -> TruncatedSeries:
    if g < 1 or max_lambda_weight < 0:
        raise ValueError("need g >= 1 and a non-negative bound")
    if max_lambda_weight > 0:
        prev = sigma_series(g, max_lambda_weight - 1)
        poly = prev.poly
    else:
        return TruncatedSeries(g, solve_m(g).poly, 0)
    w = max_lambda_weight
    ctx = GenusContext(g)
    lam_monos = lambda_monomials(ctx, w)
    if not lam_monos:
        return TruncatedSeries(g, poly, w)
    sys_ = _stratum_system(g, ctx.sigma_weight - w)
    n = len(sys_.basis)
    if sys_.rank != n:
        raise InconsistencyError(f"stratum {w} at genus {g} is not uniquely determined "
                                 f"(rank {sys_.rank} < {n})")
    rhs: dict[tuple, Poly] = {}
    for k in range(1, 2 * g):
        r = build_Q(ctx, k).apply(poly).graded_component(w)
        for lm, zpoly in r.split_by([Kind.LAMBDA]).items():
            rhs[(k, lm)] = zpoly
    new_terms: dict[Monomial, Q] = {}
    for lm in lam_monos:
        ech = EchelonForm(n)
        used = set()
        for (k, t), row in sys_.rows.items():
            target = rhs.get((k, lm))
            ech.add(row, target.terms.get(t, 0) if target is not None else 0)
            used.add((k, t))
        for k in range(1, 2 * g):
            target = rhs.get((k, lm))
            if target is not None and any((k, t) not in used for t in target.terms):
                raise InconsistencyError(f"stratum {w} at genus {g}: heat equation {k} has no solution")
        if not ech.consistent:
            raise InconsistencyError(f"stratum {w} at genus {g}: inconsistent heat system")
        for j, c in enumerate(ech.particular()):
            if c:
                m = tuple(sorted(lm + sys_.basis[j]))
                new_terms[m] = c
    return TruncatedSeries(g, poly + Poly(new_terms, g), w)


def stratum_uniqueness(g: int, max_lambda_weight: int) -> Report:
    """Every nonempty stratum up to the bound has a unique solution (full column rank)."""
    ctx = GenusContext(g)
    rep = Report(f"uniqueness[g={g}]")
    for w in range(max_lambda_weight + 1):
        if w and not lambda_monomials(ctx, w):
            continue
        if w == 0:
            from .rational import kernel_basis

            dim = len(kernel_basis(g))
            rep.add("w=0", dim == 1, None if dim == 1 else f"kernel dimension {dim}")
            continue
        s = _stratum_system(g, ctx.sigma_weight - w)
        ok = s.rank == len(s.basis)
        rep.add(f"w={w}", ok, None if ok else f"rank {s.rank} of {len(s.basis)}")
    return rep


def heat_residual_check(series: TruncatedSeries) -> Report:
    """Q_2k sigma vanishes through the bound for every k = 0 .. 2g-1."""
    ctx = series.ctx
    rep = Report(f"heat[g={series.g},W={series.max_lambda_weight}]")
    for k in range(2 * series.g):
        res = build_Q(ctx, k).apply(series.poly).truncate(series.max_lambda_weight)
        rep.add(f"Q{2 * k}", res.is_zero(), res or None)
    return rep


# -- functions of sigma ------------------------------------------------------------

class SigmaField:
    """Ambient data for fractions ``numerator / sigma^power``."""

    def __init__(self, sigma: Poly, bound: int | None = None, g: int | None = None):
        self.sigma = sigma
        self.bound = bound
        self.g = g if g is not None else sigma.genus
        self._partials: dict[Var, Poly] = {}

    @classmethod
    def of(cls, series: TruncatedSeries) -> "SigmaField":
        return cls(series.poly, series.max_lambda_weight, series.g)

    @classmethod
    def rational(cls, g: int) -> "SigmaField":
        return cls(solve_m(g).poly, None, g)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return a.mul(b, self.bound)

    def trunc(self, a: Poly) -> Poly:
        return a if self.bound is None else a.truncate(self.bound)

    def sigma_diff(self, v: Var) -> Poly:
        if v not in self._partials:
            self._partials[v] = self.sigma.diff(v)
        return self._partials[v]

    def const(self, c) -> "WpFunction":
        return WpFunction(self, Poly.const(c, self.g), 0)

    def poly(self, p: Poly) -> "WpFunction":
        return WpFunction(self, self.trunc(p), 0)

    def zeta(self, k: int) -> "WpFunction":
        """zeta_k = d_k sigma / sigma."""
        return WpFunction(self, self.sigma_diff(Var(Kind.Z, k)), 1)

    def wp(self, *indices: int) -> "WpFunction":
        """wp_{k1..kn} = -d_{k1} ... d_{kn} log sigma, n >= 2."""
        if len(indices) < 2:
            raise ValueError("wp needs at least two indices")
        f = -self.zeta(indices[0])
        for k in indices[1:]:
            f = f.diff(Var(Kind.Z, k))
        return f


class WpFunction:
    """numerator / sigma^power inside a SigmaField."""

    __slots__ = ("field", "num", "power")

    def __init__(self, fld: SigmaField, num: Poly, power: int):
        self.field = fld
        self.num = num
        self.power = power

    def _lift(self, power: int) -> Poly:
        out = self.num
        for _ in range(power - self.power):
            out = self.field.mul(out, self.field.sigma)
        return out

    def _coerce(self, other) -> "WpFunction":
        if isinstance(other, WpFunction):
            return other
        if isinstance(other, Poly):
            return self.field.poly(other)
        return self.field.const(other)

    def __add__(self, other) -> "WpFunction":
        other = self._coerce(other)
        p = max(self.power, other.power)
        return WpFunction(self.field, self._lift(p) + other._lift(p), p)

    __radd__ = __add__

    def __neg__(self) -> "WpFunction":
        return WpFunction(self.field, -self.num, self.power)

    def __sub__(self, other) -> "WpFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "WpFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "WpFunction":
        if isinstance(other, (int, Q)):
            return WpFunction(self.field, self.num.scale(other), self.power)
        other = self._coerce(other)
        return WpFunction(self.field, self.field.mul(self.num, other.num), self.power + other.power)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "WpFunction":
        out = self.field.const(1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, v: Var) -> "WpFunction":
        """d/dv of numerator / sigma^power, v a z- or lambda-variable."""
        if self.power == 0:
            return WpFunction(self.field, self.num.diff(v), 0)
        fld = self.field
        num = fld.mul(self.num.diff(v), fld.sigma) - fld.mul(self.num, fld.sigma_diff(v)).scale(self.power)
        return WpFunction(fld, num, self.power + 1)

    def apply_field(self, op: DiffOp) -> "WpFunction":
        """Apply a first-order operator without zeroth-order part (a derivation)."""
        fld = self.field
        if self.power == 0:
            return WpFunction(fld, fld.trunc(op.apply(self.num)), 0)
        num = fld.mul(op.apply(self.num), fld.sigma) \
            - fld.mul(self.num, fld.trunc(op.apply(fld.sigma))).scale(self.power)
        return WpFunction(fld, fld.trunc(num), self.power + 1)

    def is_zero(self) -> bool:
        return self.field.trunc(self.num).is_zero()

    def residual(self) -> Poly:
        return self.field.trunc(self.num)

    def __repr__(self) -> str:
        return f"WpFunction({self.num!r} / sigma^{self.power})"


def wp(series: TruncatedSeries | SigmaField, indices) -> WpFunction:
    fld = series if isinstance(series, SigmaField) else SigmaField.of(series)
    return fld.wp(*indices)


def wp_symmetry_check(fld: SigmaField, indices) -> Report:
    rep = Report("wp-symmetry")
    base = fld.wp(*indices)
    for perm in sorted(set(permutations(indices))):
        diff = fld.wp(*perm) - base
        rep.add(f"wp{perm}", diff.is_zero(), diff.residual() or None)
    return rep


# -- KdV -------------------------------------------------------------------------

def kdv_residual(fld: SigmaField) -> WpFunction:
    """4 d_3 wp_11 - d_1 (d_1^2 wp_11 - 6 wp_11^2); identically zero when z_3 is absent."""
    d1, d3 = Var(Kind.Z, 1), Var(Kind.Z, 3)
    u = fld.wp(1, 1)
    rhs = (u.diff(d1).diff(d1) - (u * u) * 6).diff(d1)
    return u.diff(d3) * 4 - rhs


def kdv_check_rational(g: int) -> Report:
    rep = Report(f"kdv-rational[g={g}]")
    res = kdv_residual(SigmaField.rational(g))
    rep.add("residual", res.is_zero(), res.residual() or None)
    return rep


def kdv_check_series(g: int, max_lambda_weight: int) -> Report:
    series = sigma_series(g, max_lambda_weight)
    res = kdv_residual(SigmaField.of(series)).residual()
    rep = Report(f"kdv-series[g={g},W={max_lambda_weight}]")
    for w in range(max_lambda_weight + 1):
        part = res.graded_component(w)
        rep.add(f"w={w}", part.is_zero(), part or None)
    return rep


# -- derivations of the function field -------------------------------------------

@dataclass
class ScriptL:
    """L_2k - (first-order z-part of H_2k) - sum c zeta_a d_b.

    ``vector_field`` holds the polynomial first-order part (including L_2k);
    ``zeta_terms`` lists (c, a, b) for the terms -c zeta_a d_b.
    """
    g: int
    k: int
    vector_field: DiffOp
    zeta_terms: list

    def apply(self, f: WpFunction) -> WpFunction:
        out = f.apply_field(self.vector_field)
        for c, a, b in self.zeta_terms:
            out = out - f.field.zeta(a) * f.diff(Var(Kind.Z, b)) * c
        return out

    def z_part(self) -> DiffOp:
        """The polynomial part without L_2k (derivatives in z only)."""
        return self.vector_field.z_part()

    def text(self) -> str:
        from .render import op_text

        head = f"L{2 * self.k}"
        for c, a, b in self.zeta_terms:
            coeff = "" if c == 1 else f"{c}*"
            head += f" - {coeff}zeta{a}*d{b}"
        rest = op_text(self.z_part())
        if rest != "0":
            head += (" - " + rest[1:]) if rest.startswith("-") else (" + " + rest)
        return head


def build_script_L(ctx: GenusContext | int, k: int, series: TruncatedSeries | None = None) -> ScriptL:
    ctx = ctx if isinstance(ctx, GenusContext) else GenusContext(ctx)
    if k not in (0, 1, 2):
        raise ValueError("only k = 0, 1, 2 are available")
    h = build_H(ctx, k)
    first = h.filter(lambda m, d: sum(e for _, e in d) == 1)
    zeta_terms = []
    for d, coeff in h.grouped():
        if sum(e for _, e in d) != 2:
            continue
        c = coeff.constant_term()
        if len(d) == 1:
            (v, _), = d
            zeta_terms.append((2 * c, v.index, v.index))
        else:
            (va, _), (vb, _) = d
            zeta_terms.append((c, vb.index, va.index))
            zeta_terms.append((c, va.index, vb.index))
    zeta_terms.sort(key=lambda t: (t[2], t[1]))
    return ScriptL(ctx.g, k, build_L(ctx, k) - first, zeta_terms)


def euler_check(series: TruncatedSeries) -> Report:
    """L_0 acts on wp_{i,j} by its weight i + j."""
    fld = SigmaField.of(series)
    l0 = build_script_L(series.g, 0)
    rep = Report(f"euler[g={series.g}]")
    idx = GenusContext(series.g).z_indices
    for i in idx:
        for j in idx:
            if j < i:
                continue
            f = fld.wp(i, j)
            res = l0.apply(f) - f * (i + j)
            rep.add(f"wp{i},{j}", res.is_zero(), res.residual() or None)
    return rep


# -- polynomial dynamical systems ---------------------------------------------------

def X(i: int, j: int) -> Var:
    return Var(Kind(Kind.X1 + i - 1), j)


def xpoly(i: int, j: int, g: int) -> Poly:
    """x_{i,j}, with x_{i,j} = 0 outside j in {1, 3, ..., 2g-1}."""
    if j > 2 * g - 1:
        return Poly.zero()
    return Poly.var(X(i, j))


def dyn_fields(g: int) -> dict[str, DiffOp]:
    """The Euler field D_0 and the field D_1 on coordinates x_{i,j}."""
    js = GenusContext(g).z_indices
    d0, d1 = [], []
    for j in js:
        for i in (1, 2, 3):
            d0.append((xpoly(i, j, g).scale(i + j), ((X(i, j), 1),)))
        d1.append((xpoly(2, j, g), ((X(1, j), 1),)))
        d1.append((xpoly(3, j, g), ((X(2, j), 1),)))
        rhs = (xpoly(1, 1, g).mul(xpoly(2, j, g)).scale(2) + xpoly(2, 1, g).mul(xpoly(1, j, g))
               + xpoly(2, j + 2, g)).scale(4)
        d1.append((rhs, ((X(3, j), 1),)))
    return {"D0": DiffOp.from_terms(d0), "D1": DiffOp.from_terms(d1)}


def _s2_system_g3() -> dict[Var, Poly]:
    x = lambda i, j: xpoly(i, j, 3)  # noqa: E731
    lam4 = Poly.var(Var(Kind.LAMBDA, 4))
    return {
        X(1, 1): lam4.scale(Q(12, 7)) + x(1, 1).mul(x(1, 1)).scale(2) + x(1, 3).scale(4),
        X(2, 1): x(1, 1).mul(x(2, 1)).scale(3) + x(2, 3).scale(5),
        X(3, 1): x(2, 1).mul(x(2, 1)).scale(3) + x(1, 1).mul(x(3, 1)).scale(2) + x(3, 3).scale(6),
        X(1, 3): lam4.mul(x(1, 1)).scale(Q(-8, 7)) + x(1, 1).mul(x(1, 3)).scale(2) + x(1, 5).scale(6),
        X(2, 3): lam4.mul(x(2, 1)).scale(Q(-8, 7)) + x(2, 1).mul(x(1, 3)).scale(3) + x(2, 5).scale(7),
        X(3, 3): (lam4.mul(x(3, 1)).scale(Q(-8, 7)) + x(3, 1).mul(x(1, 3)).scale(4)
                  + x(2, 1).mul(x(2, 3)).scale(3) - x(1, 1).mul(x(3, 3)).scale(2) + x(3, 5).scale(8)),
        X(1, 5): lam4.mul(x(1, 3)).scale(Q(-4, 7)) + x(1, 1).mul(x(1, 5)).scale(2),
        X(2, 5): lam4.mul(x(2, 3)).scale(Q(-4, 7)) + x(2, 1).mul(x(1, 5)).scale(3),
        X(3, 5): (lam4.mul(x(3, 3)).scale(Q(-4, 7)) + x(3, 1).mul(x(1, 5)).scale(4)
                  + x(2, 1).mul(x(2, 5)).scale(3) - x(1, 1).mul(x(3, 5)).scale(2)),
    }


def lambda4_identity_g3() -> Poly:
    """lambda_4 = -3 x_{1,1}^2 + x_{3,1}/2 - 2 x_{1,3}, as the right-hand side polynomial."""
    x = lambda i, j: xpoly(i, j, 3)  # noqa: E731
    return x(1, 1).mul(x(1, 1)).scale(-3) + x(3, 1).scale(Q(1, 2)) - x(1, 3).scale(2)


def dyn_systems(g: int) -> dict[str, dict[Var, Poly]]:
    """Right-hand sides of S0, S1 (any g) and S2 (g = 3 only) as polynomials in x and lambda."""
    fields = dyn_fields(g)
    out = {name: {d[0][0]: c for d, c in fields[f"D{n}"].grouped()}
           for n, name in ((0, "S0"), (1, "S1"))}
    if g == 3:
        out["S2"] = _s2_system_g3()
    return out


def star_map(fld: SigmaField) -> dict[Var, WpFunction]:
    """x_{1,j} = wp_{1,j}, x_{2,j} = wp_{1,1,j}, x_{3,j} = wp_{1,1,1,j}."""
    out = {}
    for j in GenusContext(fld.g).z_indices:
        out[X(1, j)] = fld.wp(1, j)
        out[X(2, j)] = fld.wp(1, 1, j)
        out[X(3, j)] = fld.wp(1, 1, 1, j)
    return out


def evaluate(p: Poly, images: Mapping[Var, WpFunction], fld: SigmaField) -> WpFunction:
    """Substitute x-variables by their images; lambda-variables stay as they are."""
    cache: dict[tuple, WpFunction] = {}

    def power(v: Var, e: int) -> WpFunction:
        key = (v, e)
        if key not in cache:
            cache[key] = images[v] if e == 1 else power(v, e - 1) * images[v]
        return cache[key]

    out = fld.const(0)
    for mono, c in p.items():
        term = fld.const(c)
        rest = []
        for v, e in mono:
            if v in images:
                term = term * power(v, e)
            else:
                rest.append((v, e))
        if rest:
            term = term * Poly({tuple(rest): Q(1)})
        out = out + term
    return out


def dyn_consistency_check(g: int, flow: str, max_lambda_weight: int) -> Report:
    """Substitute the star map into S0 / S1 / S2 and check every equation through the bound.

    d/dtau_0 is the derivation L_0, d/dtau_1 is d_1 and d/dtau_2 is L_2.  For S2
    (genus 3) the lambda_4 identity is checked as well.
    """
    if flow not in ("S0", "S1", "S2"):
        raise ValueError(f"unknown flow {flow!r}")
    if flow == "S2" and g != 3:
        raise ValueError("S2 is available for genus 3 only")
    series = sigma_series(g, max_lambda_weight)
    fld = SigmaField.of(series)
    images = star_map(fld)
    rhs = dyn_systems(g)[flow]
    if flow == "S1":
        act = lambda f: f.diff(Var(Kind.Z, 1))  # noqa: E731
    else:
        act = build_script_L(g, 0 if flow == "S0" else 1).apply
    rep = Report(f"dynsys[{flow},g={g},W={max_lambda_weight}]")
    for v in sorted(images):
        res = act(images[v]) - evaluate(rhs[v], images, fld)
        rep.add(f"d/dtau x{v.kind - Kind.X1 + 1},{v.index}", res.is_zero(), _first_stratum(res))
    if flow == "S2":
        res = evaluate(lambda4_identity_g3(), images, fld) - fld.poly(Poly.var(Var(Kind.LAMBDA, 4)))
        rep.add("lambda4 identity", res.is_zero(), _first_stratum(res))
    return rep


def _first_stratum(res: WpFunction):
    r = res.residual()
    if not r:
        return None
    w = min(r.lambda_weights())
    return {"stratum": w, "residual": r.graded_component(w)}
