"""Differentiation, substitution and numeric evaluation.

Differentiation acts on normal forms: jets prolong (``diff(u_p1, p2) ->
u_p1p2``), transcendental atoms follow the chain rule, and mixed partials
commute because jet multisets are order-insensitive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .nodes import (
    Add,
    Div,
    Expr,
    ExprError,
    Func,
    Jet,
    Mul,
    Pow,
    Rat,
    VarAtom,
)
from .normalform import (
    P_ONE,
    RF_ZERO,
    atom_key,
    nf,
    p_atom,
    p_const,
    rf_add,
    rf_div,
    rf_mul,
    rf_pow,
    rf_scale,
    rf_to_expr,
    _fold_constant_atom,
    _exp_lambda_multiple,
    _LAM_COSH,
    _LAM_SINH,
    p_pow,
)
from .symbols import FunctionSymbol, Var


class EvalError(ExprError):
    pass


class UnresolvedLeaf(EvalError):
    """A leaf of the expression has no value under the assignment."""


class DomainError(EvalError):
    """A transcendental atom was evaluated outside its real domain."""


class DependencyError(ExprError):
    """A substitution body uses variables outside the dependency set."""


# ---------------------------------------------------------------------------
# structural queries


def free_vars(e: Expr) -> frozenset:
    """Variables the expression may depend on (jets count via their symbol)."""
    if isinstance(e, Rat):
        return frozenset()
    if isinstance(e, VarAtom):
        return frozenset((e.var,))
    if isinstance(e, Jet):
        return frozenset(e.fn.deps)
    if isinstance(e, Func):
        return free_vars(e.arg)
    if isinstance(e, Add):
        out = frozenset()
        for t in e.terms:
            out |= free_vars(t)
        return out
    if isinstance(e, Mul):
        out = frozenset()
        for f in e.factors:
            out |= free_vars(f)
        return out
    if isinstance(e, Pow):
        return free_vars(e.base)
    if isinstance(e, Div):
        return free_vars(e.num) | free_vars(e.den)
    raise ExprError(f"unknown node {e!r}")


def functions_of(e: Expr) -> frozenset:
    if isinstance(e, Jet):
        return frozenset((e.fn,))
    if isinstance(e, Func):
        return functions_of(e.arg)
    if isinstance(e, Add):
        out = frozenset()
        for t in e.terms:
            out |= functions_of(t)
        return out
    if isinstance(e, Mul):
        out = frozenset()
        for f in e.factors:
            out |= functions_of(f)
        return out
    if isinstance(e, Pow):
        return functions_of(e.base)
    if isinstance(e, Div):
        return functions_of(e.num) | functions_of(e.den)
    return frozenset()


def contains_jet(e: Expr) -> bool:
    return bool(functions_of(e))


# ---------------------------------------------------------------------------
# differentiation (on normal forms)


def _atom_diff(atom: Expr, x: Var):
    if isinstance(atom, VarAtom):
        return (p_const(1), dict(P_ONE)) if atom.var == x else RF_ZERO
    if isinstance(atom, Jet):
        if x in atom.fn.deps:
            return p_atom(Jet(atom.fn, atom.derivs + (x,))), dict(P_ONE)
        return RF_ZERO
    if isinstance(atom, Func):
        darg = rf_diff(nf(atom.arg), x)
        if not darg[0]:
            return RF_ZERO
        kind, arg = atom.kind, atom.arg
        if kind == "sin":
            outer = (p_atom(Func("cos", arg)), dict(P_ONE))
        elif kind == "cos":
            outer = (p_atom(Func("sin", arg)), dict(P_ONE))
            outer = (dict((m, -c) for m, c in outer[0].items()), outer[1])
        elif kind == "sinh":
            outer = (p_atom(Func("cosh", arg)), dict(P_ONE))
        elif kind == "cosh":
            outer = (p_atom(Func("sinh", arg)), dict(P_ONE))
        elif kind == "exp":
            outer = (p_atom(atom), dict(P_ONE))
        elif kind == "ln":
            outer = rf_div((dict(P_ONE), dict(P_ONE)), nf(arg))
        elif kind == "arctan":
            outer = rf_div(
                (dict(P_ONE), dict(P_ONE)),
                rf_add((dict(P_ONE), dict(P_ONE)), rf_pow(nf(arg), 2)),
            )
        elif kind == "arctanh":
            one = (dict(P_ONE), dict(P_ONE))
            denom = rf_add(one, rf_scale(rf_pow(nf(arg), 2), Fraction(-1)))
            outer = rf_div(one, denom)
        elif kind == "sqrt":
            outer = rf_div(
                (dict(P_ONE), dict(P_ONE)),
                (p_atom(atom, 1), dict(P_ONE)),
            )
            outer = rf_scale(outer, Fraction(1, 2))
        else:  # pragma: no cover
            raise ExprError(f"no derivative rule for {kind}")
        return rf_mul(outer, darg)
    raise ExprError(f"not an atom: {atom!r}")


def _poly_diff(p, x: Var):
    acc = RF_ZERO
    for mono, coeff in p.items():
        for i, (atom, e) in enumerate(mono):
            da = _atom_diff(atom, x)
            if not da[0]:
                continue
            rest = list(mono)
            if e == 1:
                del rest[i]
            else:
                rest[i] = (atom, e - 1)
            piece = rf_mul((dict({tuple(rest): coeff * e}), dict(P_ONE)), da)
            acc = rf_add(acc, piece)
    return acc


def rf_diff(rf, x: Var):
    num, den = rf
    dnum = _poly_diff(num, x)
    if den == P_ONE:
        return dnum
    dden = _poly_diff(den, x)
    # (n/d)' = n'/d - n d'/d^2
    term1 = rf_div(dnum, (den, dict(P_ONE)))
    term2 = rf_div(rf_mul((num, dict(P_ONE)), dden), (p_pow(den, 2), dict(P_ONE)))
    return rf_add(term1, rf_scale(term2, Fraction(-1)))


def diff(e: Expr, x: Var) -> Expr:
    """Partial derivative, normalized.  Jets prolong along their symbol."""
    return rf_to_expr(rf_diff(nf(e), x))


# ---------------------------------------------------------------------------
# substitution via a hooked normal-form walk


def _func_rf(kind: str, arg_rf):
    folded = _fold_constant_atom(kind, arg_rf)
    if folded is not None:
        return folded
    if kind == "exp":
        n = _exp_lambda_multiple(arg_rf)
        if n is not None:
            base = {
                ((_LAM_COSH, 1),): Fraction(1),
                ((_LAM_SINH, 1),): Fraction(1 if n > 0 else -1),
            }
            return p_pow(base, abs(n)), dict(P_ONE)
    return p_atom(Func(kind, rf_to_expr(arg_rf))), dict(P_ONE)


def _rf_walk(e: Expr, jet_hook, var_hook):
    if isinstance(e, Rat):
        return p_const(e.value), dict(P_ONE)
    if isinstance(e, VarAtom):
        return var_hook(e)
    if isinstance(e, Jet):
        return jet_hook(e)
    if isinstance(e, Func):
        return _func_rf(e.kind, _rf_walk(e.arg, jet_hook, var_hook))
    if isinstance(e, Add):
        acc = RF_ZERO
        for t in e.terms:
            acc = rf_add(acc, _rf_walk(t, jet_hook, var_hook))
        return acc
    if isinstance(e, Mul):
        acc = (dict(P_ONE), dict(P_ONE))
        for f in e.factors:
            acc = rf_mul(acc, _rf_walk(f, jet_hook, var_hook))
        return acc
    if isinstance(e, Pow):
        return rf_pow(_rf_walk(e.base, jet_hook, var_hook), e.exp)
    if isinstance(e, Div):
        return rf_div(
            _rf_walk(e.num, jet_hook, var_hook),
            _rf_walk(e.den, jet_hook, var_hook),
        )
    raise ExprError(f"unknown node {e!r}")


def _default_jet(jet: Jet):
    return p_atom(jet), dict(P_ONE)


def _default_var(v: VarAtom):
    return p_atom(v), dict(P_ONE)


def substitute_function(e: Expr, f: FunctionSymbol, body: Expr) -> Expr:
    """Replace every jet of ``f`` by the matching derivative of ``body``.

    The body may itself contain jets of *other* symbols, but must depend
    only on variables in the dependency set of ``f``.
    """
    if f in functions_of(body):
        raise DependencyError(f"body of {f.name} refers to {f.name} itself")
    extra = free_vars(body) - set(f.deps)
    if extra:
        raise DependencyError(
            f"body of {f.name} depends on {sorted(v.name for v in extra)} "
            f"outside its dependency set"
        )
    cache = {(): nf(body)}

    def body_rf(derivs):
        if derivs in cache:
            return cache[derivs]
        prefix, last = derivs[:-1], derivs[-1]
        out = rf_diff(body_rf(prefix), last)
        cache[derivs] = out
        return out

    def hook(jetnode: Jet):
        if jetnode.fn == f:
            return body_rf(jetnode.derivs)
        return _default_jet(jetnode)

    return rf_to_expr(_rf_walk(e, hook, _default_var))


def substitute_var(e: Expr, var: Var, value: Expr) -> Expr:
    """Replace a coordinate leaf everywhere (including inside atom args)."""
    value_rf = nf(value)

    def hook(v: VarAtom):
        if v.var == var:
            return value_rf
        return _default_var(v)

    return rf_to_expr(_rf_walk(e, _default_jet, hook))


def rename(e: Expr, var_map=None, fn_map=None) -> Expr:
    """Rename coordinates and function symbols simultaneously.

    Jet derivative multisets are renamed through ``var_map``; the renamed
    variables must lie in the dependency set of the renamed symbol.
    """
    var_map = var_map or {}
    fn_map = fn_map or {}

    def jet_hook(jetnode: Jet):
        fn = fn_map.get(jetnode.fn, jetnode.fn)
        derivs = tuple(var_map.get(d, d) for d in jetnode.derivs)
        return p_atom(Jet(fn, derivs)), dict(P_ONE)

    def var_hook(v: VarAtom):
        return p_atom(VarAtom(var_map.get(v.var, v.var))), dict(P_ONE)

    return rf_to_expr(_rf_walk(e, jet_hook, var_hook))


# ---------------------------------------------------------------------------
# numeric evaluation


@dataclass
class Assignment:
    """Point values for coordinates plus optional concrete function bodies."""

    vars: dict = field(default_factory=dict)
    funcs: dict = field(default_factory=dict)

    def __post_init__(self):
        for fn, body in self.funcs.items():
            if contains_jet(body):
                raise DependencyError(f"body for {fn.name} must be jet-free")
            extra = free_vars(body) - set(fn.deps)
            if extra:
                raise DependencyError(
                    f"body for {fn.name} depends on "
                    f"{sorted(v.name for v in extra)}"
                )


_MATH_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "exp": math.exp,
    "arctan": math.atan,
}


def eval_num(e: Expr, a: Assignment) -> float:
    """IEEE-double value of the expression at the assignment."""
    cache: dict = {}
    return _eval(e, a, cache)


def _eval(e: Expr, a: Assignment, cache) -> float:
    if isinstance(e, Rat):
        return float(e.value)
    if isinstance(e, VarAtom):
        try:
            return float(a.vars[e.var])
        except KeyError:
            raise UnresolvedLeaf(f"no value for {e.var.name}") from None
    if isinstance(e, Jet):
        key = (e.fn, e.derivs)
        if key not in cache:
            if e.fn not in a.funcs:
                raise UnresolvedLeaf(f"no body for {e!r}")
            body = a.funcs[e.fn]
            for d in e.derivs:
                body = diff(body, d)
            cache[key] = body
        return _eval(cache[key], a, cache)
    if isinstance(e, Func):
        x = _eval(e.arg, a, cache)
        if e.kind in _MATH_FUNCS:
            return _MATH_FUNCS[e.kind](x)
        if e.kind == "ln":
            if x <= 0:
                raise DomainError(f"ln of non-positive value {x}")
            return math.log(x)
        if e.kind == "arctanh":
            if abs(x) >= 1:
                raise DomainError(f"arctanh of value {x} outside (-1, 1)")
            return math.atanh(x)
        if e.kind == "sqrt":
            if x < 0:
                raise DomainError(f"sqrt of negative value {x}")
            return math.sqrt(x)
        raise ExprError(f"no numeric rule for {e.kind}")  # pragma: no cover
    if isinstance(e, Add):
        return sum(_eval(t, a, cache) for t in e.terms)
    if isinstance(e, Mul):
        out = 1.0
        for f in e.factors:
            out *= _eval(f, a, cache)
        return out
    if isinstance(e, Pow):
        return _eval(e.base, a, cache) ** e.exp
    if isinstance(e, Div):
        den = _eval(e.den, a, cache)
        if den == 0.0:
            raise DomainError("division by zero at the evaluation point")
        return _eval(e.num, a, cache) / den
    raise ExprError(f"unknown node {e!r}")
