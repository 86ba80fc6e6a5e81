"""Verification suites grouping the structural checks of every module."""
from __future__ import annotations

from .algebra import GenusContext, InconsistencyError, Poly, Q
from .operators import H_part, L_bracket_check, lemma21_shape_check, recursion_rational_limit_check, witt_check
from .rational import adler_moser_recursion_check, kernel_basis, solve_m, verify_annihilation
from .report import Report
from .sigma import (
    dyn_consistency_check,
    euler_check,
    heat_residual_check,
    kdv_check_rational,
    kdv_check_series,
    sigma_series,
    stratum_uniqueness,
)
from .symmetric import (
    AdlerMoserConstants,
    P,
    TAU,
    adler_moser_check,
    adler_moser_from_bc,
    alpha,
    burchnall_chaundy_check,
    match_shw_to_z,
    mu,
    shw,
    shw_sequence,
    tanh_change_of_vars,
    tanh_inverse,
    tau_from_p,
    wronskian_sequence,
)

SUITES = ("rational", "witt", "heat", "lemma21", "lbracket", "kdv", "dynsys", "addendum", "all")

DEFAULT_GENUS = 4
DEFAULT_WEIGHT = 6


def suite_rational(max_genus: int = 5) -> Report:
    rep = Report("rational")
    for g in range(1, max_genus + 1):
        dim = len(kernel_basis(g))
        rep.add(f"kernel-dim[g={g}]", dim == 1, None if dim == 1 else dim)
        a, b = solve_m(g, "nullspace"), solve_m(g, "induction")
        rep.add(f"methods-agree[g={g}]", a.poly == b.poly, None if a.poly == b.poly else a.poly - b.poly)
        rep.extend(verify_annihilation(a))
    if max_genus >= 2:
        rep.extend(adler_moser_recursion_check(max_genus))
    return rep


def suite_witt(genus: int = 4, max_k: int = 6) -> Report:
    rep = Report("witt")
    rep.extend(witt_check(max_k, genus))
    return rep


def suite_heat(genus: int = 3, max_lambda_weight: int = DEFAULT_WEIGHT) -> Report:
    rep = Report("heat")
    for g in range(1, genus + 1):
        rep.extend(stratum_uniqueness(g, max_lambda_weight))
        rep.extend(heat_residual_check(sigma_series(g, max_lambda_weight)))
        rep.extend(recursion_rational_limit_check(GenusContext(g)))
    return rep


def suite_lemma21(genus: int = DEFAULT_GENUS) -> Report:
    rep = Report("lemma21")
    for g in range(1, genus + 1):
        ctx = GenusContext(g)
        for k in range(2 * g):
            rep.extend(lemma21_shape_check(H_part(ctx, k), ctx, k))
    return rep


def suite_lbracket(genus: int = DEFAULT_GENUS) -> Report:
    rep = Report("lbracket")
    for g in range(2, genus + 1):
        ctx = GenusContext(g)
        for k in range(1, 2 * g - 1):
            rep.extend(L_bracket_check(ctx, k))
    return rep


def suite_kdv(genus: int = 5, max_lambda_weight: int = DEFAULT_WEIGHT) -> Report:
    rep = Report("kdv")
    for g in range(1, genus + 1):
        rep.extend(kdv_check_rational(g))
    for g in range(2, min(genus, 3) + 1):
        rep.extend(kdv_check_series(g, max_lambda_weight))
    return rep


def suite_dynsys(genus: int = 3, max_lambda_weight: int = 4) -> Report:
    rep = Report("dynsys")
    for g in range(2, genus + 1):
        rep.extend(euler_check(sigma_series(g, max_lambda_weight)))
        for flow in ("S0", "S1"):
            rep.extend(dyn_consistency_check(g, flow, max_lambda_weight))
    if genus >= 3:
        rep.extend(dyn_consistency_check(3, "S2", max_lambda_weight))
    return rep


def suite_addendum(genus: int = 5) -> Report:
    rep = Report("addendum")
    seq = shw_sequence(genus)
    wr = wronskian_sequence(genus, "p")
    for g in range(genus + 1):
        rep.add(f"wronskian[g={g}]", wr[g] == seq[g], None if wr[g] == seq[g] else wr[g] - seq[g])
        odd = all(v.index % 2 == 1 for v in seq[g].variables())
        rep.add(f"odd-p-only[g={g}]", odd)
    for k in range(2, genus + 1):
        lhs = shw(k).diff(P(2 * k - 1))
        rhs = shw(k - 2).scale(Q((-1) ** (k + 1), 2 * k - 1))
        rep.add(f"dShW/dp[k={k}]", lhs == rhs, None if lhs == rhs else lhs - rhs)
        lead = shw(k).coefficient(((P(1), k * (k + 1) // 2),))
        rep.add(f"leading[k={k}]", lead == 1 / mu(k), lead)
    rep.extend(burchnall_chaundy_check(seq))
    rep.extend(adler_moser_check(adler_moser_from_bc(seq)))
    consts = AdlerMoserConstants.table(genus)
    rep.add("mu-table", all(consts.mu[k] == _mu_direct(k) for k in consts.mu))
    rep.add("alpha-table", all(consts.alpha[n] == alpha(n) for n in consts.alpha))
    rep.add("tau2", tau_from_p(2) == -Poly.var(P(3)))
    rep.add("tau3", tau_from_p(3) == Poly.var(P(5)).scale(9))
    order = 2 * max(genus, 2) - 1
    fwd, inv = tanh_change_of_vars(genus, order), tanh_inverse(genus, order)
    back = {v: p.subs(fwd) for v, p in inv.items()}
    ok = all(p == Poly.var(TAU(v.index)) for v, p in back.items())
    rep.add("tanh-roundtrip", ok)
    for g in range(1, genus + 1):
        try:
            ch = match_shw_to_z(g)
            rep.add(f"pz-match[g={g}]", True, {str(v): p for v, p in ch.p_of_z.items()})
        except InconsistencyError as exc:
            rep.add(f"pz-match[g={g}]", False, str(exc))
    return rep


def _mu_direct(k: int) -> int:
    """3^{k-1} 5^{k-2} ... (2k-1), an equivalent product form of mu_k."""
    out = 1
    for j in range(1, k):
        out *= (2 * j + 1) ** (k - j)
    return out


def run_suite(name: str, genus: int | None = None, max_lambda_weight: int | None = None,
              max_k: int | None = None) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    w = DEFAULT_WEIGHT if max_lambda_weight is None else max_lambda_weight
    if name == "rational":
        return suite_rational(genus or 5)
    if name == "witt":
        return suite_witt(genus or DEFAULT_GENUS, max_k if max_k is not None else 6)
    if name == "heat":
        return suite_heat(genus or 3, w)
    if name == "lemma21":
        return suite_lemma21(genus or DEFAULT_GENUS)
    if name == "lbracket":
        return suite_lbracket(genus or DEFAULT_GENUS)
    if name == "kdv":
        return suite_kdv(genus or 5, w)
    if name == "dynsys":
        return suite_dynsys(genus or 3, 4 if max_lambda_weight is None else max_lambda_weight)
    if name == "addendum":
        return suite_addendum(genus or 5)
    rep = Report("all")
    for sub in SUITES[:-1]:
        rep.extend(run_suite(sub, None, max_lambda_weight, max_k))
    return rep
