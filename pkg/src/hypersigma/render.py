"""Deterministic text, JSON and LaTeX rendering of polynomials and operators."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import Kind, Monomial, Poly, Var

_LATEX_NAME = {
    Kind.Z: "z",
    Kind.LAMBDA: r"\lambda",
    Kind.E: "e",
    Kind.P: "p",
    Kind.TAU: r"\tau",
    Kind.TAUSTAR: r"\tau^{*}",
}


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def mono_text(m: Monomial, deriv: bool = False) -> str:
    parts = []
    for v, e in m:
        name = ("d" + (v.name[1:] if v.kind is Kind.Z else v.name)) if deriv else v.name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _signed_terms(items, render_mono) -> str:
    out = []
    for i, (m, c) in enumerate(items):
        body = render_mono(m)
        mag = abs(c)
        if not body:
            piece = _frac_text(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{_frac_text(mag)}*{body}"
        if i == 0:
            out.append(("-" if c < 0 else "") + piece)
        else:
            out.append((" - " if c < 0 else " + ") + piece)
    return "".join(out)


def poly_text(p: Poly) -> str:
    if not p:
        return "0"
    return _signed_terms(p.items(), mono_text)


def op_text(op) -> str:
    if not op:
        return "0"
    pieces = []
    for d, coeff in op.grouped():
        dtext = mono_text(d, deriv=True)
        if not d:
            text = poly_text(coeff)
            sign_free = text
        elif len(coeff) == 1:
            (m, c), = coeff.terms.items()
            text = _signed_terms([(m, c)], lambda mm: "*".join(x for x in (mono_text(mm), dtext) if x))
            sign_free = text
        else:
            sign_free = f"({poly_text(coeff)})*{dtext}"
        pieces.append(sign_free)
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-") and not piece.startswith("(-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


# -- JSON ---------------------------------------------------------------------

def _exps_json(m: Monomial) -> list:
    return [[v.kind.name, v.index, e] for v, e in m]


def poly_terms_json(p: Poly) -> list:
    return [{"coeff": [c.numerator, c.denominator], "exps": _exps_json(m)}
            for m, c in p.items()]


def poly_json_obj(p: Poly) -> dict:
    return {"genus": p.genus, "terms": poly_terms_json(p)}


def op_json_obj(op) -> dict:
    return {"genus": op.genus,
            "terms": [{"orders": _exps_json(d), "coeff": poly_terms_json(c)}
                      for d, c in op.grouped()]}


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def poly_json(p: Poly) -> str:
    return dumps(poly_json_obj(p))


def op_json(op) -> str:
    return dumps(op_json_obj(op))


def _mono_from_json(exps) -> Monomial:
    return tuple(sorted((Var(Kind[k], int(i)), int(e)) for k, i, e in exps))


def _terms_from_json(terms) -> dict:
    return {_mono_from_json(t["exps"]): Fraction(t["coeff"][0], t["coeff"][1]) for t in terms}


def poly_from_json(data: str | dict) -> Poly:
    if isinstance(data, str):
        data = json.loads(data)
    return Poly(_terms_from_json(data["terms"]), data.get("genus"))


def op_from_json(data: str | dict):
    from .diffop import DiffOp

    if isinstance(data, str):
        data = json.loads(data)
    terms = {}
    for t in data["terms"]:
        d = _mono_from_json(t["orders"])
        for m, c in _terms_from_json(t["coeff"]).items():
            terms[(m, d)] = c
    return DiffOp(terms, data.get("genus"))


# -- LaTeX ---------------------------------------------------------------------

def _latex_var(v: Var) -> str:
    if v.kind in (Kind.X1, Kind.X2, Kind.X3):
        return f"x_{{{v.kind - Kind.X1 + 1},{v.index}}}"
    idx = str(v.index)
    return f"{_LATEX_NAME[v.kind]}_{idx if len(idx) == 1 else '{' + idx + '}'}"


def mono_latex(m: Monomial, deriv: bool = False) -> str:
    parts = []
    for v, e in m:
        if deriv:
            base = (r"\partial_{" + str(v.index) + "}" if v.kind is Kind.Z
                    else r"\partial_{" + _latex_var(v) + "}")
        else:
            base = _latex_var(v)
        parts.append(base if e == 1 else f"{base}^{{{e}}}")
    return " ".join(parts)


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_terms(items) -> str:
    out = []
    for i, (m, c) in enumerate(items):
        body = mono_latex(m)
        mag = abs(c)
        if not body:
            piece = _frac_latex(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{_frac_latex(mag)} {body}"
        if i == 0:
            out.append(("-" if c < 0 else "") + piece)
        else:
            out.append((" - " if c < 0 else " + ") + piece)
    return "".join(out)


def poly_latex(p: Poly) -> str:
    """LaTeX with the rational content pulled out: (1/3)(p1^3 - p3) renders as
    ``\\frac{1}{3}\\left(p_1^{3} - p_3\\right)``."""
    if not p:
        return "0"
    items = p.items()
    content = p.content()
    if items[0][1] < 0:
        content = -content
    if content == 1:
        return _latex_terms(items)
    inner = _latex_terms([(m, c / content) for m, c in items])
    if len(items) == 1:
        return _latex_terms(items)
    prefix = "-" if content < 0 else ""
    return rf"{prefix}{_frac_latex(abs(content))}\left({inner}\right)"


def op_latex(op) -> str:
    if not op:
        return "0"
    pieces = []
    for d, coeff in op.grouped():
        dl = mono_latex(d, deriv=True)
        if not d:
            pieces.append(poly_latex(coeff))
        elif len(coeff) == 1:
            (m, c), = coeff.terms.items()
            mag = abs(c)
            body = " ".join(x for x in (mono_latex(m), dl) if x)
            lead = "" if mag == 1 else _frac_latex(mag) + " "
            pieces.append(("-" if c < 0 else "") + lead + body)
        else:
            pieces.append(rf"\left({poly_latex(coeff)}\right) {dl}")
    out = pieces[0]
    for piece in pieces[1:]:
        out += (" - " + piece[1:]) if piece.startswith("-") else (" + " + piece)
    return out


def emit(obj: Any, fmt: str = "text") -> str:
    """Render a polynomial, operator, report or plain data structure."""
    from .diffop import DiffOp
    from .report import Report

    if fmt not in ("text", "json", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, Poly):
        return {"text": poly_text, "json": poly_json, "latex": poly_latex}[fmt](obj)
    if isinstance(obj, DiffOp):
        return {"text": op_text, "json": op_json, "latex": op_latex}[fmt](obj)
    if isinstance(obj, Report):
        return dumps(obj.to_dict()) if fmt == "json" else obj.to_text()
    if fmt == "json":
        return dumps(to_jsonable(obj))
    if isinstance(obj, (list, tuple)):
        return " ".join(emit(x, fmt) for x in obj)
    if isinstance(obj, Fraction):
        return _frac_latex(obj) if fmt == "latex" else _frac_text(obj)
    return str(obj)


def to_jsonable(obj: Any) -> Any:
    from .diffop import DiffOp

    if isinstance(obj, Poly):
        return poly_json_obj(obj)
    if isinstance(obj, DiffOp):
        return op_json_obj(obj)
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return obj
