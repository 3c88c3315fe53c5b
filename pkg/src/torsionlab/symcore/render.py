"""Deterministic rendering of expressions.

Three styles: ``canonical`` (grammar text that parses back to the
normalized expression), ``latex`` and ``json``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .nodes import Add, Div, Expr, ExprError, Func, Jet, Mul, Pow, Rat, VarAtom
from .normalform import normalize


def render(e: Expr, style: str = "canonical") -> str:
    if style == "canonical":
        return render_canonical(e)
    if style == "latex":
        return _latex(e)
    if style == "json":
        return json.dumps(_json_tree(e), sort_keys=True)
    raise ExprError(f"unknown render style {style!r}")


# ---------------------------------------------------------------------------
# canonical grammar text


def render_canonical(e: Expr) -> str:
    """Grammar text of the normal form; ``parse`` inverts it exactly."""
    n = normalize(e)
    if isinstance(n, Div):
        return f"({_render_sum(n.num)})/({_render_sum(n.den)})"
    return _render_sum(n)


def _term_parts(term: Expr):
    """Split a canonical term into (coefficient, factor list)."""
    if isinstance(term, Rat):
        return term.value, []
    if isinstance(term, Mul):
        factors = list(term.factors)
        if isinstance(factors[0], Rat):
            return factors[0].value, factors[1:]
        return Fraction(1), factors
    return Fraction(1), [term]


def _render_factor(f: Expr) -> str:
    if isinstance(f, Pow):
        return f"{_render_factor(f.base)}^{f.exp}"
    if isinstance(f, VarAtom):
        return f.var.name
    if isinstance(f, Jet):
        if not f.derivs:
            return f.fn.name
        return f.fn.name + "_" + "".join(d.name for d in f.derivs)
    if isinstance(f, Func):
        return f"{f.kind}({render_canonical(f.arg)})"
    raise ExprError(f"unexpected factor in canonical form: {f!r}")


def _render_unsigned(coeff: Fraction, factors: list) -> str:
    pieces = [_render_factor(f) for f in factors]
    if not pieces:
        return str(abs(coeff))
    if abs(coeff) != 1:
        pieces.insert(0, str(abs(coeff)))
    return "*".join(pieces)


def _render_sum(e: Expr) -> str:
    terms = e.terms if isinstance(e, Add) else (e,)
    out = []
    for idx, term in enumerate(terms):
        coeff, factors = _term_parts(term)
        body = _render_unsigned(coeff, factors)
        if idx == 0:
            if coeff < 0:
                # "-x^2" would parse as (-x)^2, so force an explicit -1
                # coefficient whenever the first factor carries a power
                if factors and isinstance(factors[0], Pow) and abs(coeff) == 1:
                    out.append(f"-1*{body}")
                else:
                    out.append(f"-{body}")
            else:
                out.append(body)
        else:
            out.append(f"{' - ' if coeff < 0 else ' + '}{body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# latex


_LATEX_VARS = {
    "t": "t",
    "x1": "x^{1}",
    "x2": "x^{2}",
    "p1": "p^{1}",
    "p2": "p^{2}",
    "lam": r"\lambda",
}

_LATEX_FUNCS = {
    "sin": r"\sin",
    "cos": r"\cos",
    "sinh": r"\sinh",
    "cosh": r"\cosh",
    "exp": r"\exp",
    "ln": r"\ln",
    "arctan": r"\arctan",
    "arctanh": r"\operatorname{arctanh}",
    "sqrt": r"\sqrt",
}


def _latex(e: Expr, wrap: bool = False) -> str:
    if isinstance(e, Rat):
        v = e.value
        if v.denominator == 1:
            s = str(v.numerator)
        else:
            sign = "-" if v < 0 else ""
            s = rf"{sign}\tfrac{{{abs(v.numerator)}}}{{{v.denominator}}}"
        return rf"\left({s}\right)" if wrap and v < 0 else s
    if isinstance(e, VarAtom):
        return _LATEX_VARS[e.var.name]
    if isinstance(e, Jet):
        if not e.derivs:
            return e.fn.name
        subs = "".join(_LATEX_VARS[d.name] for d in e.derivs)
        return f"{e.fn.name}_{{{subs}}}"
    if isinstance(e, Func):
        if e.kind == "sqrt":
            return rf"\sqrt{{{_latex(e.arg)}}}"
        return rf"{_LATEX_FUNCS[e.kind]}\left({_latex(e.arg)}\right)"
    if isinstance(e, Add):
        s = " + ".join(_latex(t) for t in e.terms)
        return rf"\left({s}\right)" if wrap else s
    if isinstance(e, Mul):
        return r" \, ".join(_latex(f, wrap=True) for f in e.factors)
    if isinstance(e, Pow):
        return rf"{_latex(e.base, wrap=True)}^{{{e.exp}}}"
    if isinstance(e, Div):
        return rf"\frac{{{_latex(e.num)}}}{{{_latex(e.den)}}}"
    raise ExprError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# json


def _json_tree(e: Expr):
    if isinstance(e, Rat):
        return {"kind": "rational", "value": str(e.value)}
    if isinstance(e, VarAtom):
        return {"kind": "var", "name": e.var.name}
    if isinstance(e, Jet):
        return {
            "kind": "jet",
            "function": e.fn.name,
            "derivs": [d.name for d in e.derivs],
        }
    if isinstance(e, Func):
        return {"kind": "func", "name": e.kind, "arg": _json_tree(e.arg)}
    if isinstance(e, Add):
        return {"kind": "sum", "terms": [_json_tree(t) for t in e.terms]}
    if isinstance(e, Mul):
        return {"kind": "product", "factors": [_json_tree(f) for f in e.factors]}
    if isinstance(e, Pow):
        return {"kind": "power", "base": _json_tree(e.base), "exp": e.exp}
    if isinstance(e, Div):
        return {
            "kind": "quotient",
            "num": _json_tree(e.num),
            "den": _json_tree(e.den),
        }
    raise ExprError(f"unknown node {e!r}")
