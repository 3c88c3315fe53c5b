"""Base coordinates and function symbols of the jet-space engine.

The engine works over six fixed coordinates ``t, x1, x2, p1, p2, lam`` on
the extended 1-jet space (``p1, p2`` are the fiber slopes, ``lam`` the
spectral fiber coordinate).  Unknown functions are declared as
:class:`FunctionSymbol` values carrying an explicit dependency set; partial
derivatives of an unknown are represented by jet coordinates, see
``nodes.Jet``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum


class Var(IntEnum):
    """The six base coordinates.  Enum values give the canonical order."""

    t = 0
    x1 = 1
    x2 = 2
    p1 = 3
    p2 = 4
    lam = 5

    def __repr__(self) -> str:  # keep reprs short in test diffs
        return self.name


VAR_BY_NAME = {v.name: v for v in Var}

#: coordinates an ODE right-hand side may depend on (everything but lam)
ODE_VARS = (Var.t, Var.x1, Var.x2, Var.p1, Var.p2)

#: coordinates of the t = 0 slice carrying the unknowns u, v
SLICE_VARS = (Var.x1, Var.x2, Var.p1, Var.p2)


class SymbolError(ValueError):
    """Malformed symbol declaration (bad name or dependency set)."""


@dataclass(frozen=True)
class FunctionSymbol:
    """A named unknown function together with its allowed arguments.

    ``deps`` is stored as a sorted tuple; jets of the function may only
    carry derivative variables from this set.  An empty dependency set
    declares a formal constant.
    """

    name: str
    deps: tuple[Var, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.name or not self.name[0].isalpha() or not self.name.isalnum():
            raise SymbolError(f"bad function name {self.name!r}")
        if self.name in VAR_BY_NAME or self.name in FUNC_KINDS:
            raise SymbolError(f"function name {self.name!r} shadows a builtin")
        object.__setattr__(self, "deps", tuple(sorted(set(self.deps))))

    def __repr__(self) -> str:
        return self.name


#: unary transcendental atoms understood by the engine
FUNC_KINDS = (
    "sin",
    "cos",
    "sinh",
    "cosh",
    "exp",
    "ln",
    "arctan",
    "arctanh",
    "sqrt",
)

U = FunctionSymbol("u", SLICE_VARS)
V = FunctionSymbol("v", SLICE_VARS)
F1 = FunctionSymbol("F1", ODE_VARS)
F2 = FunctionSymbol("F2", ODE_VARS)
# named second-order combinations used by the reference PDE systems;
# their defining expressions live in lambdacollect.rs_defs
R_SYM = FunctionSymbol("r", SLICE_VARS)
S_SYM = FunctionSymbol("s", SLICE_VARS)

BUILTIN_FUNCTIONS: dict[str, FunctionSymbol] = {
    f.name: f for f in (U, V, F1, F2, R_SYM, S_SYM)
}
