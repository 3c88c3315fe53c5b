"""Expression tree nodes.

Expressions are immutable trees over rational constants, coordinate
leaves, jet coordinates, the unary transcendental atoms, sums, products,
integer powers and quotients.  Arithmetic operators build unnormalized
trees; ``normalform.normalize`` brings any tree into the canonical
sum-of-monomials form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .symbols import FUNC_KINDS, FunctionSymbol, Var


class ExprError(ValueError):
    """Raised for structurally invalid expressions."""


class Expr:
    """Base class; provides operator sugar shared by all node kinds."""

    __slots__ = ()

    def __add__(self, other):
        return Add((self, _coerce(other)))

    def __radd__(self, other):
        return Add((_coerce(other), self))

    def __sub__(self, other):
        return Add((self, Mul((MINUS_ONE, _coerce(other)))))

    def __rsub__(self, other):
        return Add((_coerce(other), Mul((MINUS_ONE, self))))

    def __mul__(self, other):
        return Mul((self, _coerce(other)))

    def __rmul__(self, other):
        return Mul((_coerce(other), self))

    def __truediv__(self, other):
        return Div(self, _coerce(other))

    def __rtruediv__(self, other):
        return Div(_coerce(other), self)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise ExprError(f"exponent must be an int, got {exponent!r}")
        return Pow(self, exponent)

    def __neg__(self):
        return Mul((MINUS_ONE, self))


def _coerce(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, Rational):
        return Rat(Fraction(value))
    raise ExprError(f"cannot use {value!r} in an expression")


@dataclass(frozen=True, repr=False)
class Rat(Expr):
    """Exact rational constant."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def __repr__(self):
        return f"Rat({self.value})"


@dataclass(frozen=True, repr=False)
class VarAtom(Expr):
    """A bare coordinate leaf."""

    var: Var

    def __repr__(self):
        return self.var.name


@dataclass(frozen=True, repr=False)
class Jet(Expr):
    """Jet coordinate: a partial derivative of a function symbol.

    ``derivs`` is an order-insensitive multiset, stored sorted; every entry
    must belong to the symbol's dependency set.  An empty multiset denotes
    the function itself.
    """

    fn: FunctionSymbol
    derivs: tuple[Var, ...] = ()

    def __post_init__(self):
        bad = [d for d in self.derivs if d not in self.fn.deps]
        if bad:
            raise ExprError(
                f"{self.fn.name} does not depend on {', '.join(b.name for b in bad)}"
            )
        object.__setattr__(self, "derivs", tuple(sorted(self.derivs)))

    def __repr__(self):
        if not self.derivs:
            return self.fn.name
        return self.fn.name + "_" + "".join(d.name for d in self.derivs)


@dataclass(frozen=True, repr=False)
class Func(Expr):
    """Unary transcendental atom applied to an expression."""

    kind: str
    arg: Expr

    def __post_init__(self):
        if self.kind not in FUNC_KINDS:
            raise ExprError(f"unknown function kind {self.kind!r}")

    def __repr__(self):
        return f"{self.kind}({self.arg!r})"


@dataclass(frozen=True, repr=False)
class Add(Expr):
    terms: tuple[Expr, ...]

    def __repr__(self):
        return "(" + " + ".join(map(repr, self.terms)) + ")"


@dataclass(frozen=True, repr=False)
class Mul(Expr):
    factors: tuple[Expr, ...]

    def __repr__(self):
        return "(" + "*".join(map(repr, self.factors)) + ")"


@dataclass(frozen=True, repr=False)
class Pow(Expr):
    base: Expr
    exp: int

    def __repr__(self):
        return f"{self.base!r}^{self.exp}"


@dataclass(frozen=True, repr=False)
class Div(Expr):
    num: Expr
    den: Expr

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------------------
# convenience constructors

ZERO = Rat(Fraction(0))
ONE = Rat(Fraction(1))
MINUS_ONE = Rat(Fraction(-1))

T, X1, X2, P1, P2, LAM = (VarAtom(v) for v in Var)


def num(value) -> Rat:
    """Exact rational constant from an int, Fraction or decimal string."""
    return Rat(Fraction(value))


def jet(fn: FunctionSymbol, *derivs: Var) -> Jet:
    return Jet(fn, tuple(derivs))


def sin(e) -> Func:
    return Func("sin", _coerce(e))


def cos(e) -> Func:
    return Func("cos", _coerce(e))


def sinh(e) -> Func:
    return Func("sinh", _coerce(e))


def cosh(e) -> Func:
    return Func("cosh", _coerce(e))


def exp(e) -> Func:
    return Func("exp", _coerce(e))


def ln(e) -> Func:
    return Func("ln", _coerce(e))


def arctan(e) -> Func:
    return Func("arctan", _coerce(e))


def arctanh(e) -> Func:
    return Func("arctanh", _coerce(e))


def sqrt(e) -> Func:
    return Func("sqrt", _coerce(e))
