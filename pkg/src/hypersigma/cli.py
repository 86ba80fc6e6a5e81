"""Command line interface: operator catalogs, solvers and verification suites."""
from __future__ import annotations

import argparse
import os
import sys

from .algebra import GenusContext, InconsistencyError, Poly
from .render import dumps, emit, poly_json_obj, to_jsonable
from .report import Report

FORMATS = ("text", "json", "latex")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--genus", type=int, metavar="G")
    p.add_argument("--max-lambda-weight", type=int, metavar="W")
    p.add_argument("--max-k", type=int, metavar="K")
    p.add_argument("--suite", metavar="NAME")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hypersigma", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-op", parents=[common], help="emit L, H, Q or A operators")
    p.add_argument("--family", choices=("L", "H", "Q", "A"), required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("solve-rational", parents=[common], help="rational limit m_g")
    p.add_argument("--method", choices=("nullspace", "induction"), default="nullspace")

    sub.add_parser("sigma-series", parents=[common], help="truncated sigma series")

    p = sub.add_parser("adler-moser", parents=[common], help="Adler-Moser polynomial theta_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--basis", choices=("tau", "p"), default="tau")

    p = sub.add_parser("shw", parents=[common], help="Schur / Schur-Weierstrass polynomial")
    p.add_argument("--basis", choices=("e", "p"), default="p")

    p = sub.add_parser("change-of-vars", parents=[common], help="tanh (tau -> tau*) or p -> z change")
    p.add_argument("--which", choices=("tanh", "pz"), required=True)
    p.add_argument("--order", type=int, help="odd truncation order in t for --which tanh")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--max-genus", type=int, dest="genus", metavar="G", help="alias of --genus")

    p = sub.add_parser("emit-table", parents=[common], help="constant tables")
    p.add_argument("--table", choices=("mu", "alpha", "tau", "th"), required=True)
    return parser


def _need_genus(args, lo: int = 1) -> int:
    if args.genus is None:
        raise UsageError("--genus is required")
    if args.genus < lo:
        raise UsageError(f"--genus must be at least {lo}")
    return args.genus


def _mapping_out(mapping: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps({v.name: poly_json_obj(p) for v, p in mapping.items()})
    sep = " = "
    return "\n".join(f"{emit(Poly.var(v), fmt)}{sep}{emit(p, fmt)}" for v, p in mapping.items())


def _run(args) -> tuple[str, int]:
    fmt = args.format
    cmd = args.command
    if cmd == "gen-op":
        from . import operators as ops

        if args.family == "A":
            if args.k < 0:
                raise UsageError("--k must be non-negative")
            return emit(ops.build_A(args.k, _need_genus(args)), fmt), 0
        ctx = GenusContext(_need_genus(args))
        if not 0 <= args.k <= 2 * ctx.g - 1:
            raise UsageError(f"--k must lie in 0..{2 * ctx.g - 1}")
        if args.family == "L":
            op = ops.build_L(ctx, args.k)
        elif args.family == "Q":
            op = ops.build_Q(ctx, args.k)
        else:
            op = ops.build_H(ctx, args.k) if args.k <= 2 else ops.H_part(ctx, args.k)
        return emit(op, fmt), 0
    if cmd == "solve-rational":
        from .rational import solve_m

        return emit(solve_m(_need_genus(args), args.method).poly, fmt), 0
    if cmd == "sigma-series":
        from .sigma import sigma_series

        w = 0 if args.max_lambda_weight is None else args.max_lambda_weight
        if w < 0:
            raise UsageError("--max-lambda-weight must be non-negative")
        return emit(sigma_series(_need_genus(args), w).poly, fmt), 0
    if cmd == "adler-moser":
        from .symmetric import theta_in_p, theta_universal

        if args.k < 0:
            raise UsageError("--k must be non-negative")
        return emit(theta_universal(args.k) if args.basis == "tau" else theta_in_p(args.k), fmt), 0
    if cmd == "shw":
        from .symmetric import schur_poly

        return emit(schur_poly(_need_genus(args, 0), args.basis), fmt), 0
    if cmd == "change-of-vars":
        from .symmetric import match_shw_to_z, tanh_change_of_vars

        g = _need_genus(args)
        if args.which == "tanh":
            if g < 2 and args.order is None:
                raise UsageError("the tanh change of variables needs --genus >= 2 or --order")
            order = args.order if args.order is not None else 2 * g - 1
            if order < 3 or order % 2 == 0:
                raise UsageError("--order must be odd and at least 3")
            return _mapping_out(tanh_change_of_vars(g, order), fmt), 0
        return _mapping_out(match_shw_to_z(g).p_of_z, fmt), 0
    if cmd == "verify":
        from .verify import SUITES, run_suite

        name = args.suite or "all"
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        if args.genus is not None and args.genus < 1:
            raise UsageError("--genus must be at least 1")
        if args.max_k is not None and args.max_k < 2:
            raise UsageError("--max-k must be at least 2")
        rep = run_suite(name, args.genus, args.max_lambda_weight, args.max_k)
        if rep.passed:
            return emit(rep, fmt), 0
        failed = Report(rep.suite, rep.failures())
        return emit(failed, "json"), 1
    if cmd == "emit-table":
        from .symmetric import alpha, mu, tanh_coefficients, tau_coefficient

        k = 4 if args.max_k is None else args.max_k
        if k < 0:
            raise UsageError("--max-k must be non-negative")
        if args.table == "mu":
            vals = [mu(i) for i in range(k + 1)]
        elif args.table == "alpha":
            vals = [alpha(2 * i - 1) for i in range(1, k + 1)]
        elif args.table == "tau":
            vals = [tau_coefficient(i) for i in range(2, k + 1)]
        else:
            vals = list(tanh_coefficients(k))
        if fmt == "json":
            return dumps(to_jsonable(vals)), 0
        return emit(vals, fmt), 0
    raise UsageError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.out is not None:
        parent = os.path.dirname(os.path.abspath(args.out))
        if os.path.isdir(args.out) or not os.path.isdir(parent):
            print(f"hypersigma: error: cannot write to {args.out!r}", file=sys.stderr)
            return 2
    try:
        text, code = _run(args)
    except UsageError as exc:
        print(f"hypersigma: error: {exc}", file=sys.stderr)
        return 2
    except InconsistencyError as exc:
        print(dumps({"passed": False, "error": str(exc)}))
        return 1
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
