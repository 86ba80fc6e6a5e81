"""Operator families of the genus-g heat system.

* ``v_poly``  -- entries of the polynomial matrix of the parameter fields,
* ``build_L`` -- the vector fields tangent to the discriminant,
* ``build_H`` -- the explicit second-order operators H_0, H_2, H_4,
* ``build_Q`` -- Q_2k = L_2k - H_2k, with k >= 3 obtained by recursion,
* ``build_A`` -- the Witt generators in z (rational limits up to sign),

plus the structural checks on them.
"""
from __future__ import annotations

from functools import lru_cache

from .algebra import GenusContext, Kind, Poly, Q, Var, mono_degree
from .diffop import DiffOp, commutator
from .report import Report


def _ctx(g) -> GenusContext:
    return g if isinstance(g, GenusContext) else GenusContext(g)


@lru_cache(maxsize=None)
def v_poly(ctx: GenusContext, k: int, m: int) -> Poly:
    """v_{2k,2m}(lambda), symmetric in (k, m), homogeneous of weight 2k + 2m."""
    ctx = _ctx(ctx)
    g = ctx.g
    if not (1 <= k <= 2 * g and 1 <= m <= 2 * g):
        raise ValueError(f"v index ({k}, {m}) outside 1..{2 * g}")
    if k > m:
        k, m = m, k
    lam = ctx.lam
    out = ctx.zero
    for s in range(k):
        out = out + lam(2 * s).mul(lam(2 * (k + m - s))).scale(2 * (k + m - 2 * s))
    return out - lam(2 * k).mul(lam(2 * m)).scale(Q(2 * k * (2 * g - m + 1), 2 * g + 1))


@lru_cache(maxsize=None)
def build_L(ctx: GenusContext, k: int) -> DiffOp:
    """L_2k = sum_q v_{2k+2, 2q-2} d/d(lambda_2q); a derivation in the parameters."""
    ctx = _ctx(ctx)
    g = ctx.g
    if not 0 <= k <= 2 * g - 1:
        raise ValueError(f"L_{2 * k} undefined for genus {g}")
    pairs = [(v_poly(ctx, k + 1, q - 1), ((Var(Kind.LAMBDA, 2 * q), 1),))
             for q in range(2, 2 * g + 2)]
    return DiffOp.from_terms(pairs, g)


def _d(ctx: GenusContext, *indices: int) -> tuple:
    out: dict[Var, int] = {}
    for i in indices:
        v = ctx.z_var(i)
        out[v] = out.get(v, 0) + 1
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def build_H(ctx: GenusContext, k: int) -> DiffOp:
    """Explicit H_0, H_2, H_4 for arbitrary genus."""
    ctx = _ctx(ctx)
    g = ctx.g
    if k not in (0, 1, 2):
        raise ValueError("explicit H is available for k = 0, 1, 2 only")
    if k > 2 * g - 1:
        raise ValueError(f"H_{2 * k} does not exist in genus {g}")
    lam, z, one = ctx.lam, ctx.z, ctx.one
    den = 2 * g + 1
    t: list[tuple[Poly, tuple]] = []
    if k == 0:
        for s in range(1, g + 1):
            t.append((z(2 * s - 1).scale(2 * s - 1), _d(ctx, 2 * s - 1)))
        t.append((ctx.const(-(g * (g + 1) // 2)), ()))
    elif k == 1:
        t.append((one.scale(Q(1, 2)), _d(ctx, 1, 1)))
        for s in range(1, g):
            t.append((z(2 * s - 1).scale(2 * s - 1), _d(ctx, 2 * s + 1)))
            t.append((lam(4).mul(z(2 * s + 1)).scale(Q(-4 * (g - s), den)), _d(ctx, 2 * s - 1)))
        for s in range(1, g + 1):
            c = lam(4 * s).scale(Q(2 * s - 1, 2)) - lam(4).mul(lam(4 * s - 4)).scale(Q(2 * (g - s + 1), den))
            t.append((c.mul(z(2 * s - 1, 2)), ()))
    else:
        t.append((one, _d(ctx, 1, 3)))
        for s in range(1, g - 1):
            t.append((z(2 * s - 1).scale(2 * s - 1), _d(ctx, 2 * s + 3)))
        for s in range(1, g):
            t.append((lam(4).mul(z(2 * s + 1)).scale(2 * s - 1), _d(ctx, 2 * s + 1)))
            t.append((lam(6).mul(z(2 * s + 1)).scale(Q(-6 * (g - s), den)), _d(ctx, 2 * s - 1)))
        for s in range(1, g + 1):
            c = lam(4 * s + 2).scale(2 * s - 1) - lam(6).mul(lam(4 * s - 4)).scale(Q(3 * (g - s + 1), den))
            t.append((c.mul(z(2 * s - 1, 2)), ()))
        for s in range(1, g):
            t.append((lam(4 * s + 4).mul(z(2 * s - 1)).mul(z(2 * s + 1)).scale(2 * s - 1), ()))
        t.append((lam(4).scale(Q(-g * (g - 1), 2)), ()))
    return DiffOp.from_terms(t, g)


@lru_cache(maxsize=None)
def build_Q(ctx: GenusContext, k: int) -> DiffOp:
    """Q_2k = L_2k - H_2k; for k >= 3 via

        Q_2k = [Q_2, Q_2k-2] / (2(k-2)) - 2(2g-k+1)/((k-2)(2g+1)) (lambda_2k Q_0 - lambda_4 Q_2k-4).
    """
    ctx = _ctx(ctx)
    g = ctx.g
    if not 0 <= k <= 2 * g - 1:
        raise ValueError(f"Q_{2 * k} undefined for genus {g}")
    if k <= 2:
        return build_L(ctx, k) - build_H(ctx, k)
    q2, q0 = build_Q(ctx, 1), build_Q(ctx, 0)
    head = commutator(q2, build_Q(ctx, k - 1)).scale(Q(1, 2 * (k - 2)))
    tail = (q0.left_multiply(ctx.lam(2 * k)) - build_Q(ctx, k - 2).left_multiply(ctx.lam(4)))
    return head - tail.scale(Q(2 * (2 * g - k + 1), (k - 2) * (2 * g + 1)))


def H_part(ctx: GenusContext, k: int) -> DiffOp:
    """H_2k = L_2k - Q_2k for every 0 <= k <= 2g - 1."""
    ctx = _ctx(ctx)
    return build_L(ctx, k) - build_Q(ctx, k)


def delta_closed_form(ctx: GenusContext, k: int) -> Poly:
    """Constant term of H_2k: (-(2g-k+1)(2g-k)/4 + (g+[(k+1)/2]-k)(g-[(k+1)/2])/2) lambda_2k."""
    ctx = _ctx(ctx)
    g = ctx.g
    fl = (k + 1) // 2
    c = Q(-(2 * g - k + 1) * (2 * g - k), 4) + Q((g + fl - k) * (g - fl), 2)
    return ctx.lam(2 * k).scale(c)


def rational_H(ctx: GenusContext, k: int) -> DiffOp:
    """Rational limit operators in closed form:

        H^_0  = sum (2s-1) z_{2s-1} d_{2s-1} - g(g+1)/2,
        H^_2k = 1/2 sum_{s=1..k} d_{2s-1} d_{2k+1-2s} + sum_{s=1..g-k} (2s-1) z_{2s-1} d_{2s+2k-1},
    with d_s = 0 for s > 2g - 1.
    """
    ctx = _ctx(ctx)
    g = ctx.g
    if k == 0:
        return -build_A(0, g) - Q(g * (g + 1), 2)
    return -build_A(k, g)


@lru_cache(maxsize=None)
def build_A(k: int, active_g: int) -> DiffOp:
    """A_2k = -1/2 sum_{s=1..k} d_{2s-1} d_{2k+1-2s} - sum_s (2s-1) z_{2s-1} d_{2s+2k-1},
    truncated to z_1 .. z_{2g-1} (variables and derivatives beyond vanish)."""
    if k < 0 or active_g < 1:
        raise ValueError("need k >= 0 and active_g >= 1")
    ctx = GenusContext(active_g)
    top = 2 * active_g - 1
    t = []
    for s in range(1, k + 1):
        a, b = 2 * s - 1, 2 * k + 1 - 2 * s
        if a <= top and b <= top:
            t.append((ctx.const(Q(-1, 2)), _d(ctx, a, b)))
    for s in range(1, active_g + 1):
        b = 2 * s + 2 * k - 1
        if b <= top:
            t.append((ctx.z(2 * s - 1).scale(-(2 * s - 1)), _d(ctx, b)))
    return DiffOp.from_terms(t, active_g)


# -- checks ---------------------------------------------------------------------

def lemma21_shape_check(op: DiffOp, ctx: GenusContext, k: int) -> Report:
    """Check that ``op`` (the H-part of Q_2k) has the form

        1/2 sum (alpha_ab d_a d_b + 2 beta_ab z_a d_b + gamma_ab z_a z_b) + delta

    with alpha_ab = 1 exactly when a + b = 2k, beta linear and gamma quadratic
    in lambda, and delta given by the closed form.
    """
    ctx = _ctx(ctx)
    rep = Report(f"lemma21[g={ctx.g},k={k}]")
    alpha: dict[tuple, Poly] = {}
    beta: dict[tuple, Poly] = {}
    gamma: dict[tuple, Poly] = {}
    delta = ctx.zero
    bad = []
    for d, coeff in op.grouped():
        if any(v.kind is not Kind.Z for v, _ in d):
            bad.append((d, coeff))
            continue
        for zmono, lam_coeff in coeff.split_by([Kind.Z]).items():
            nz, nd = mono_degree(zmono), mono_degree(d)
            key = tuple(v.index for v, e in zmono for _ in range(e))
            dkey = tuple(v.index for v, e in d for _ in range(e))
            if (nz, nd) == (0, 2):
                alpha[dkey] = lam_coeff
            elif (nz, nd) == (1, 1):
                beta[key + dkey] = lam_coeff
            elif (nz, nd) == (2, 0):
                gamma[key] = lam_coeff
            elif (nz, nd) == (0, 0):
                delta = lam_coeff
            else:
                bad.append((d, coeff))
    rep.add("shape", not bad, [f"{d}: {c}" for d, c in bad] or None)
    expected_alpha = {}
    for a in ctx.z_indices:
        b = 2 * k - a
        if a <= b and b in ctx.z_indices:
            expected_alpha[(a, b)] = ctx.const(Q(1, 2) if a == b else 1)
    alpha_ok = alpha == expected_alpha
    rep.add("alpha", alpha_ok, None if alpha_ok else {"found": {str(k_): v for k_, v in alpha.items()}})
    lin = [key for key, c in beta.items() if c.degree([Kind.LAMBDA]) > 1]
    rep.add("beta_linear", not lin, lin or None)
    quad = [key for key, c in gamma.items() if c.degree([Kind.LAMBDA]) > 2]
    rep.add("gamma_quadratic", not quad, quad or None)
    expected_delta = delta_closed_form(ctx, k)
    rep.add("delta", delta == expected_delta, None if delta == expected_delta else delta - expected_delta)
    return rep


def witt_check(max_k: int, active_g: int, h2_brackets: bool = True) -> Report:
    """[A_2i, A_2j] = 2(j-i) A_2(i+j) for 0 <= i < j <= max_k in the genus window,
    and -2(k-2) H^_2k = [H^_2, H^_2k-2] for k = 3..2g-1."""
    if max_k < 2:
        raise ValueError("max_k must be at least 2")
    rep = Report(f"witt[g={active_g}]")
    for i in range(max_k + 1):
        for j in range(i, max_k + 1):
            res = commutator(build_A(i, active_g), build_A(j, active_g)) \
                - build_A(i + j, active_g).scale(2 * (j - i))
            rep.add(f"[A{2 * i},A{2 * j}]", res.is_zero(), res or None)
    if h2_brackets:
        ctx = GenusContext(active_g)
        for k in range(3, 2 * active_g):
            res = rational_H(ctx, k).scale(-2 * (k - 2)) \
                - commutator(rational_H(ctx, 1), rational_H(ctx, k - 1))
            rep.add(f"[H2,H{2 * k - 2}]", res.is_zero(), res or None)
    return rep


def L_bracket_check(ctx: GenusContext, k: int) -> Report:
    """[L_2, L_2k] = 2(k-1) L_2k+2 + 4(2g-k)/(2g+1) (lambda_2k+2 L_0 - lambda_4 L_2k-2)."""
    ctx = _ctx(ctx)
    g = ctx.g
    if not 1 <= k <= 2 * g - 2:
        raise ValueError(f"k must lie in 1..{2 * g - 2}")
    lhs = commutator(build_L(ctx, 1), build_L(ctx, k))
    rhs = build_L(ctx, k + 1).scale(2 * (k - 1)) + (
        build_L(ctx, 0).left_multiply(ctx.lam(2 * k + 2))
        - build_L(ctx, k - 1).left_multiply(ctx.lam(4))
    ).scale(Q(4 * (2 * g - k), 2 * g + 1))
    res = lhs - rhs
    rep = Report(f"lbracket[g={g}]")
    rep.add(f"[L2,L{2 * k}]", res.is_zero(), res or None)
    return rep


def recursion_rational_limit_check(ctx: GenusContext) -> Report:
    """Rational limits of the recursion's H_2k agree with the closed form, and
    the parameter part of each Q_2k is exactly L_2k."""
    ctx = _ctx(ctx)
    rep = Report(f"recursion[g={ctx.g}]")
    for k in range(2 * ctx.g):
        q = build_Q(ctx, k)
        lres = q.lambda_part() - build_L(ctx, k)
        rep.add(f"L-part Q{2 * k}", lres.is_zero(), lres or None)
        hres = H_part(ctx, k).rational_limit() - rational_H(ctx, k)
        rep.add(f"H^{2 * k}", hres.is_zero(), hres or None)
    return rep
