"""Rational limits m_g(z) of the sigma function.

m_g is the polynomial of weight -g(g+1)/2 killed by the rational limits of
H_0, H_2, H_4 and normalized by m_g(1, 0, ..., 0) = 1.  Two independent
solvers are provided: a joint-kernel computation and the coefficient
induction descending in total degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    GenusContext,
    InconsistencyError,
    Kind,
    Monomial,
    Poly,
    Q,
    Var,
    _falling,
    mono_degree,
    monomial_from_exponents,
    weighted_partitions,
)
from .linalg import EchelonForm
from .operators import rational_H
from .report import Report


@dataclass(frozen=True)
class RationalLimitSolution:
    g: int
    poly: Poly
    normalization: Q
    method: str
    kernel_dim: int | None = None

    @property
    def leading_monomial(self) -> Monomial:
        return ((Var(Kind.Z, 1), self.g * (self.g + 1) // 2),)


def z_monomials(g: int, weight: int | None = None) -> list[Monomial]:
    """z-monomials of the given (negative) weight, default -g(g+1)/2, in
    lexicographic order of the exponent vector (i_1, i_3, ...), descending."""
    ctx = GenusContext(g)
    total = -(weight if weight is not None else ctx.sigma_weight)
    if total < 0:
        return []
    return [monomial_from_exponents(ctx.z_vars, exps)
            for exps in weighted_partitions(total, ctx.z_indices)]


def heat_constraint_rows(ops, basis: list[Monomial]) -> list[dict[int, Q]]:
    """Linear conditions on the coefficients of sum_j x_j basis[j] for every op to kill it."""
    rows: dict[tuple, dict[int, Q]] = {}
    for n, op in enumerate(ops):
        for j, m in enumerate(basis):
            for tm, c in op.apply(Poly._raw({m: Q(1)}, None)).terms.items():
                row = rows.setdefault((n, tm), {})
                row[j] = row.get(j, 0) + c
    return [rows[k] for k in sorted(rows, key=lambda k: (k[0], k[1]))]


def _low_ops(ctx: GenusContext):
    return [rational_H(ctx, k) for k in range(min(2, 2 * ctx.g - 1) + 1)]


def kernel_basis(g: int) -> list[Poly]:
    """Basis of the joint kernel of H^_0, H^_2, H^_4 on the weight -g(g+1)/2 stratum."""
    ctx = GenusContext(g)
    basis = z_monomials(g)
    ech = EchelonForm(len(basis))
    for row in heat_constraint_rows(_low_ops(ctx), basis):
        ech.add(row)
    return [Poly({basis[j]: c for j, c in enumerate(vec)}, g) for vec in ech.nullspace()]


def _solve_nullspace(g: int) -> RationalLimitSolution:
    ker = kernel_basis(g)
    if len(ker) != 1:
        raise InconsistencyError(f"joint kernel at genus {g} has dimension {len(ker)}, expected 1")
    p = ker[0]
    lead = p.coefficient(((Var(Kind.Z, 1), g * (g + 1) // 2),))
    if not lead:
        raise InconsistencyError(f"kernel vector at genus {g} vanishes at (1, 0, ..., 0)")
    return RationalLimitSolution(g, p.scale(1 / lead), Q(1), "nullspace", 1)


def _solve_induction(g: int) -> RationalLimitSolution:
    ctx = GenusContext(g)
    n = g * (g + 1) // 2
    z1 = ctx.z_var(1)
    lead = ((z1, n),)

    def top(m: Monomial) -> int:
        return max(v.index for v, _ in m)

    order = sorted(z_monomials(g), key=lambda m: (-mono_degree(m), -top(m)))
    a: dict[Monomial, Q] = {lead: Q(1)}
    for m in order:
        if m == lead:
            continue
        t = top(m)
        op = rational_H(ctx, (t - 1) // 2)
        em = dict(m)
        # target monomial: m * z_1 / z_t
        target = dict(em)
        target[z1] = target.get(z1, 0) + 1
        target[ctx.z_var(t)] -= 1
        rest = Q(0)
        own = Q(0)
        for (xm, d), c in op.terms.items():
            src = dict(target)
            ok = True
            for v, e in xm:
                if src.get(v, 0) < e:
                    ok = False
                    break
                src[v] -= e
            if not ok:
                continue
            for v, e in d:
                src[v] = src.get(v, 0) + e
            f = 1
            for v, e in d:
                f *= _falling(src[v], e)
            smono = tuple(sorted((v, e) for v, e in src.items() if e))
            if smono == m:
                own += c * f
            elif smono in a:
                rest += c * f * a[smono]
            elif smono in _stratum_set(g):
                raise InconsistencyError(f"induction order violated at {m}: needs {smono}")
        if not own:
            raise InconsistencyError(f"induction step for {m} has no pivot")
        val = -rest / own
        if val:
            a[m] = val
        else:
            a[m] = Q(0)
    poly = Poly({m: c for m, c in a.items() if c}, g)
    for op in _low_ops(ctx):
        if op.apply(poly):
            raise InconsistencyError(f"induction result at genus {g} is not annihilated")
    return RationalLimitSolution(g, poly, Q(1), "induction")


@lru_cache(maxsize=None)
def _stratum_set(g: int) -> frozenset:
    return frozenset(z_monomials(g))


@lru_cache(maxsize=None)
def solve_m(g: int, method: str = "nullspace") -> RationalLimitSolution:
    if g < 1:
        raise ValueError("genus must be at least 1")
    if method == "nullspace":
        return _solve_nullspace(g)
    if method == "induction":
        return _solve_induction(g)
    raise ValueError(f"unknown method {method!r}")


def m_poly(g: int) -> Poly:
    """m_g, with m_0 = 1."""
    if g == 0:
        return Poly.const(1)
    return solve_m(g).poly


def verify_annihilation(sol: RationalLimitSolution | Poly, up_to_k: int | None = None,
                        g: int | None = None) -> Report:
    if isinstance(sol, RationalLimitSolution):
        poly, g = sol.poly, sol.g
    else:
        poly = sol
        g = g if g is not None else poly.genus
    ctx = GenusContext(g)
    top = 2 * g - 1 if up_to_k is None else up_to_k
    if top > 2 * g - 1:
        raise ValueError(f"up_to_k must not exceed {2 * g - 1}")
    rep = Report(f"annihilation[g={g}]")
    for k in range(top + 1):
        res = rational_H(ctx, k).apply(poly)
        rep.add(f"H^{2 * k}", res.is_zero(), res or None)
    return rep


def adler_moser_recursion_check(max_g: int) -> Report:
    """m_{g+1}' m_{g-1} - m_{g+1} m_{g-1}' = (2g+1) m_g^2 for g = 1 .. max_g - 1, prime = d/dz_1."""
    if max_g < 1:
        raise ValueError("max_g must be at least 1")
    z1 = Var(Kind.Z, 1)
    rep = Report("adler-moser")
    for g in range(1, max_g):
        hi, mid, lo = (m_poly(h).with_genus(None) for h in (g + 1, g, g - 1))
        res = hi.diff(z1) * lo - hi * lo.diff(z1) - (mid * mid).scale(2 * g + 1)
        rep.add(f"g={g}", res.is_zero(), res or None)
    return rep
