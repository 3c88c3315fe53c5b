"""Exact symbolic engine: expressions, normal form, calculus, parsing."""

from .symbols import (
    BUILTIN_FUNCTIONS,
    F1,
    F2,
    FUNC_KINDS,
    FunctionSymbol,
    ODE_VARS,
    R_SYM,
    S_SYM,
    SLICE_VARS,
    SymbolError,
    U,
    V,
    Var,
)
from .nodes import (
    Add,
    Div,
    Expr,
    ExprError,
    Func,
    Jet,
    LAM,
    MINUS_ONE,
    Mul,
    ONE,
    P1,
    P2,
    Pow,
    Rat,
    T,
    VarAtom,
    X1,
    X2,
    ZERO,
    arctan,
    arctanh,
    cos,
    cosh,
    exp,
    jet,
    ln,
    num,
    sin,
    sinh,
    sqrt,
)
from .normalform import (
    DivisionByZero,
    JetDenominator,
    NormalFormError,
    equivalent,
    is_zero,
    normalize,
    poly_monic,
    poly_of,
)
from .calculus import (
    Assignment,
    DependencyError,
    DomainError,
    EvalError,
    UnresolvedLeaf,
    contains_jet,
    diff,
    eval_num,
    free_vars,
    functions_of,
    rename,
    substitute_function,
    substitute_var,
)
from .parser import ParseError, parse
from .render import render, render_canonical
from .linsolve import SingularMatrixError, determinant, solve_linear

__all__ = [
    "Add", "Assignment", "BUILTIN_FUNCTIONS", "DependencyError", "Div",
    "DivisionByZero", "DomainError", "EvalError", "Expr", "ExprError",
    "F1", "F2", "FUNC_KINDS", "Func", "FunctionSymbol", "Jet",
    "JetDenominator", "LAM", "MINUS_ONE", "Mul", "NormalFormError",
    "ODE_VARS", "ONE", "P1", "P2", "ParseError", "Pow", "R_SYM", "Rat",
    "S_SYM", "SLICE_VARS", "SingularMatrixError", "SymbolError", "T", "U",
    "UnresolvedLeaf", "V", "Var", "VarAtom", "X1", "X2", "ZERO", "arctan",
    "arctanh", "contains_jet", "cos", "cosh", "determinant", "diff",
    "equivalent", "eval_num", "exp", "free_vars", "functions_of",
    "is_zero", "jet", "ln", "normalize", "num", "parse", "poly_monic",
    "poly_of", "rename", "render", "render_canonical", "sin", "sinh",
    "solve_linear", "sqrt", "substitute_function", "substitute_var",
]
