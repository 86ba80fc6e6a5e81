"""Symmetric functions, Schur-Weierstrass and Adler-Moser polynomials.

Elementary symmetric functions e_k and power sums p_k both carry weight -k.
The hyperelliptic Schur polynomial is Sh_g = det(e_{g-2i+j+1}); written in
power sums it becomes ShW_g, which only involves p_1, p_3, ..., p_{2g-1}.
Along p_1 = x (other p's fixed) we have e_k' = e_{k-1}, which turns these
into Burchnall-Chaundy sequences; rescaling by mu_k gives Adler-Moser ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .algebra import InconsistencyError, Kind, Poly, Q, Var
from .report import Report


def P(k: int) -> Var:
    return Var(Kind.P, k)


def E(k: int) -> Var:
    return Var(Kind.E, k)


def TAU(k: int) -> Var:
    return Var(Kind.TAU, k)


def TAUSTAR(k: int) -> Var:
    return Var(Kind.TAUSTAR, k)


def e_var(k: int) -> Poly:
    """e_k as a variable, with e_0 = 1 and e_k = 0 for k < 0."""
    if k < 0:
        return Poly.zero()
    if k == 0:
        return Poly.const(1)
    return Poly.var(E(k))


# -- constants ---------------------------------------------------------------

def mu(k: int) -> Q:
    """mu_0 = mu_1 = 1, mu_k = prod_{j=1..k} (2k-2j+1)^j."""
    if k < 0:
        raise ValueError("mu_k needs k >= 0")
    out = 1
    for j in range(1, k + 1):
        out *= (2 * k - 2 * j + 1) ** j
    return Q(out)


def alpha(n: int) -> Q:
    """alpha_{2i-1} = (-1)^{i-1} 3^2 5^2 ... (2i-3)^2 (2i-1), indexed by the odd n = 2i-1."""
    if n < 1 or n % 2 == 0:
        raise ValueError("alpha is indexed by odd positive integers")
    i = (n + 1) // 2
    out = (-1) ** (i - 1) * n
    for m in range(3, n - 1, 2):
        out *= m * m
    return Q(out)


@dataclass(frozen=True)
class AdlerMoserConstants:
    mu: dict
    alpha: dict

    @classmethod
    def table(cls, k_max: int) -> "AdlerMoserConstants":
        return cls({k: mu(k) for k in range(k_max + 1)},
                   {2 * i - 1: alpha(2 * i - 1) for i in range(1, k_max + 1)})


def tau_coefficient(k: int) -> Q:
    """c with tau_k = c * p_{2k-1}: (-1)^{k+1} mu_k / ((2k-1) mu_{k-2})."""
    if k < 2:
        raise ValueError("tau_k from p needs k >= 2")
    return (-1) ** (k + 1) * mu(k) / ((2 * k - 1) * mu(k - 2))


def tau_from_p(k: int) -> Poly:
    return Poly.var(P(2 * k - 1)).scale(tau_coefficient(k))


# -- e in terms of p ---------------------------------------------------------

@lru_cache(maxsize=None)
def e_in_p(k: int) -> Poly:
    """e_k in power sums via Newton's identity k e_k = sum_{i=1..k} (-1)^{i-1} p_i e_{k-i}."""
    if k < 0:
        return Poly.zero()
    if k == 0:
        return Poly.const(1)
    acc = Poly.zero()
    for i in range(1, k + 1):
        term = Poly.var(P(i)).mul(e_in_p(k - i))
        acc = acc + (term if i % 2 else -term)
    return acc.scale(Q(1, k))


def e_to_p(f: Poly) -> Poly:
    """Rewrite a polynomial in e's in power sums."""
    mapping = {v: e_in_p(v.index) for v in f.variables() if v.kind is Kind.E}
    return f.subs(mapping)


# -- determinants and Schur polynomials --------------------------------------

def det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion along the first row, memoised on column sets."""
    n = len(matrix)
    if n == 0:
        return Poly.const(1)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple) -> Poly:
        if row == n:
            return Poly.const(1)
        acc = Poly.zero()
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = entry.mul(sub)
            acc = acc + (term if pos % 2 == 0 else -term)
        return acc

    return minor(0, tuple(range(n)))


def schur_matrix(g: int) -> list[list[Poly]]:
    """The g x g matrix (e_{g-2i+j+1}), 1 <= i, j <= g."""
    return [[e_var(g - 2 * i + j + 1) for j in range(1, g + 1)] for i in range(1, g + 1)]


@lru_cache(maxsize=None)
def schur_poly(g: int, basis: str = "e") -> Poly:
    """Sh_g in the e basis, or ShW_g in the power-sum basis."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    if basis == "e":
        return det(schur_matrix(g))
    if basis == "p":
        return e_to_p(schur_poly(g, "e"))
    raise ValueError(f"unknown basis {basis!r}")


def shw(g: int) -> Poly:
    return schur_poly(g, "p")


# -- the derivation along x = p_1 ---------------------------------------------

def x_derivative(f: Poly) -> Poly:
    """d/dx with x = p_1 = z_1 = tau_1 and all other p, z, tau fixed.

    On the e basis this is the derivation e_k -> e_{k-1}; on power sums it
    is d/dp_1 (the two agree under e_in_p)."""
    out = Poly.zero(f.genus)
    for v in f.variables():
        if v.kind is Kind.E:
            out = out + f.diff(v).mul(e_var(v.index - 1))
        elif v.index == 1 and v.kind in (Kind.P, Kind.Z, Kind.TAU):
            out = out + f.diff(v)
    return out


def wronskian(funcs: Sequence[Poly], derivative: Callable[[Poly], Poly] = x_derivative) -> Poly:
    """det(D^{i-1} psi_j); the empty Wronskian is 1."""
    if not funcs:
        return Poly.const(1)
    rows = [list(funcs)]
    for _ in range(1, len(funcs)):
        rows.append([derivative(f) for f in rows[-1]])
    return det(rows)


def wronskian_sequence(g_max: int, basis: str = "e") -> list[Poly]:
    """W_g(e_1, e_3, ..., e_{2g-1}) for g = 0..g_max; here psi_j'' = psi_{j-1}."""
    out = []
    for g in range(g_max + 1):
        w = wronskian([e_var(2 * j - 1) for j in range(1, g + 1)])
        out.append(e_to_p(w) if basis == "p" else w)
    return out


# -- Burchnall-Chaundy and Adler-Moser -----------------------------------------

def sequence_relation_check(seq: Sequence[Poly], factor: Callable[[int], Q],
                            name: str, derivative: Callable[[Poly], Poly] = x_derivative
                            ) -> Report:
    """phi_{k+1}' phi_{k-1} - phi_{k+1} phi_{k-1}' = factor(k) phi_k^2 for each consecutive triple."""
    rep = Report(name)
    for k in range(1, len(seq) - 1):
        hi, mid, lo = seq[k + 1], seq[k], seq[k - 1]
        res = derivative(hi).mul(lo) - hi.mul(derivative(lo)) - mid.mul(mid).scale(factor(k))
        rep.add(f"k={k}", res.is_zero(), res or None)
    return rep


def burchnall_chaundy_check(seq: Sequence[Poly]) -> Report:
    return sequence_relation_check(seq, lambda k: Q(1), "burchnall-chaundy")


def adler_moser_check(seq: Sequence[Poly]) -> Report:
    return sequence_relation_check(seq, lambda k: Q(2 * k + 1), "adler-moser")


def adler_moser_from_bc(seq: Sequence[Poly]) -> list[Poly]:
    """theta_k = mu_k phi_k."""
    rep = burchnall_chaundy_check(seq)
    if not rep.passed:
        raise ValueError("input is not a Burchnall-Chaundy sequence: "
                         + ", ".join(c.name for c in rep.failures()))
    return [f.scale(mu(k)) for k, f in enumerate(seq)]


def shw_sequence(g_max: int) -> list[Poly]:
    return [shw(g) for g in range(g_max + 1)]


def theta_in_p(k: int) -> Poly:
    return shw(k).scale(mu(k))


@lru_cache(maxsize=None)
def theta_universal(k: int) -> Poly:
    """theta_k(tau_1, ..., tau_k) = mu_k ShW_k with p_1 = tau_1, p_{2j-1} = tau_j / c_j."""
    mapping = {P(1): Poly.var(TAU(1))}
    for j in range(2, k + 1):
        mapping[P(2 * j - 1)] = Poly.var(TAU(j)).scale(1 / tau_coefficient(j))
    return theta_in_p(k).subs(mapping)


# -- the hyperbolic tangent change of variables ---------------------------------

@lru_cache(maxsize=None)
def tanh_coefficients(order: int) -> tuple:
    """Coefficients c_0..c_order of th(t) from th' = 1 - th^2, th(0) = 0."""
    c = [Q(0)] * (order + 1)
    for n in range(order):
        # (n+1) c_{n+1} = [t^n](1 - th^2)
        sq = sum((c[i] * c[n - i] for i in range(n + 1)), Q(0))
        c[n + 1] = ((1 if n == 0 else 0) - sq) / (n + 1)
    return tuple(c)


def _series_compose_tanh(inner: dict[int, Poly], order: int) -> dict[int, Poly]:
    """th(X) for X = sum_n inner[n] t^n with inner[0] = 0, truncated at t^order."""
    th = tanh_coefficients(order)
    out: dict[int, Poly] = {}
    power = {0: Poly.const(1)}
    for m in range(1, order + 1):
        nxt: dict[int, Poly] = {}
        for a, pa in power.items():
            for b, pb in inner.items():
                if a + b <= order:
                    nxt[a + b] = nxt.get(a + b, Poly.zero()) + pa.mul(pb)
        power = nxt
        if not power:
            break
        if th[m]:
            for n, pn in power.items():
                out[n] = out.get(n, Poly.zero()) + pn.scale(th[m])
    return out


def tanh_change_of_vars(g: int, order: int | None = None) -> dict[Var, Poly]:
    """tau*_i in terms of tau_2, tau_3, ... from

        sum_{i>=2} tau_i / alpha_{2i-1} t^{2i-1} = th(sum_{i>=2} tau*_i t^{2i-1}),

    for all i >= 2 with 2i - 1 <= order (default order 2g - 1)."""
    order = 2 * g - 1 if order is None else order
    if order < 3 or order % 2 == 0:
        raise ValueError("order must be odd and at least 3")
    solved: dict[int, Poly] = {}
    for i in range(2, (order + 1) // 2 + 1):
        n = 2 * i - 1
        # coefficient of t^n in th(X) with tau*_i left out is the lower-order correction
        inner = {2 * j - 1: solved[j] for j in solved}
        corr = _series_compose_tanh(inner, n).get(n, Poly.zero())
        solved[i] = Poly.var(TAU(i)).scale(1 / alpha(n)) - corr
    return {TAUSTAR(i): p for i, p in solved.items()}


def tanh_inverse(g: int, order: int | None = None) -> dict[Var, Poly]:
    """tau_i in terms of tau*: tau_i = alpha_{2i-1} [t^{2i-1}] th(sum tau*_j t^{2j-1})."""
    order = 2 * g - 1 if order is None else order
    if order < 3 or order % 2 == 0:
        raise ValueError("order must be odd and at least 3")
    inner = {2 * j - 1: Poly.var(TAUSTAR(j)) for j in range(2, (order + 1) // 2 + 1)}
    series = _series_compose_tanh(inner, order)
    return {TAU(i): series.get(2 * i - 1, Poly.zero()).scale(alpha(2 * i - 1))
            for i in range(2, (order + 1) // 2 + 1)}


# -- matching ShW_g to the rational limit m_g -----------------------------------

@dataclass(frozen=True)
class PZChange:
    g: int
    p_of_z: dict  # Var(P, 2k-1) -> Poly in z
    beta: dict    # k -> Q
    q: dict       # k -> Poly in z_3, ..., z_{2k-3}

    def substitute(self, f: Poly) -> Poly:
        return f.subs(self.p_of_z)


def match_shw_to_z(g: int, m: Poly | None = None) -> PZChange:
    """Find p_{2k-1} = beta_k z_{2k-1} + q_{2k-1}(z_3, ...) with mu_g ShW_g(p(z)) = m_g(z), z_1 = p_1.

    The coefficient of z_1^{N-(2k-1)} (N = g(g+1)/2) on both sides is linear in
    the unknown p_{2k-1} once p_3, ..., p_{2k-3} are known, so the p's are
    found one at a time for k = 2, ..., g; the full identity is checked at the end.
    """
    from .rational import m_poly

    if g < 1:
        raise ValueError("genus must be at least 1")
    m = (m if m is not None else m_poly(g)).with_genus(None)
    z1 = Var(Kind.Z, 1)
    n = g * (g + 1) // 2
    target = shw(g).scale(mu(g))
    p_of_z: dict[Var, Poly] = {P(1): Poly.var(z1)}
    beta: dict[int, Q] = {}
    q: dict[int, Poly] = {}

    def z1_coeff(f: Poly, e: int, var: Var) -> Poly:
        return Poly({tuple(t for t in mono if t[0] != var): c for mono, c in f.terms.items()
                     if dict(mono).get(var, 0) == e})

    for k in range(2, g + 1):
        e = n - (2 * k - 1)
        lhs = z1_coeff(m, e, z1)
        rhs = z1_coeff(target, e, P(1))
        pk = P(2 * k - 1)
        lin = rhs.diff(pk)
        if lin.variables() or not lin:
            raise InconsistencyError(f"p_{2 * k - 1} does not enter linearly at genus {g}")
        rest = (rhs - lin.mul(Poly.var(pk))).subs(p_of_z)
        sol = (lhs - rest).scale(1 / lin.constant_term())
        if any(v.kind is not Kind.Z or v.index == 1 or v.index > 2 * k - 1 for v in sol.variables()):
            raise InconsistencyError(f"p_{2 * k - 1} is not of the form beta z + q(z_3, ...)")
        zk = Poly.var(Var(Kind.Z, 2 * k - 1))
        beta[k] = sol.coefficient(((Var(Kind.Z, 2 * k - 1), 1),))
        q[k] = sol - zk.scale(beta[k])
        if not beta[k]:
            raise InconsistencyError(f"beta_{k} vanishes at genus {g}")
        p_of_z[pk] = sol
    change = PZChange(g, p_of_z, beta, q)
    if change.substitute(target) != m:
        raise InconsistencyError(f"mu_g ShW_g(p(z)) differs from m_g at genus {g}")
    return change


def factorial_coefficient_check(k: int) -> bool:
    """Extreme coefficients of e_k: 1/k! on p_1^k and (-1)^{k-1}/k on p_k."""
    f = e_in_p(k)
    return (f.coefficient(((P(1), k),)) == Q(1, factorial(k))
            and f.coefficient(((P(k), 1),)) == Q((-1) ** (k - 1), k))
