"""Vector fields on the extended jet space.

A field is a finite map from the six coordinate directions to coefficient
expressions; the zero field has no entries.  Everything is immutable and
normalized at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symcore import (
    Add,
    Expr,
    ExprError,
    Mul,
    Rat,
    Var,
    VarAtom,
    ZERO,
    diff,
    free_vars,
    is_zero,
    normalize,
    num,
    substitute_function,
)
from .symcore.linsolve import SingularMatrixError, solve_linear


class FrameError(ExprError):
    """A frame does not span the directions it is asked to absorb."""


@dataclass(frozen=True)
class VectorField:
    """Sparse coefficient map direction -> Expr, stored normalized."""

    coeffs: tuple = ()

    @staticmethod
    def make(mapping) -> "VectorField":
        entries = []
        for var, e in sorted(mapping.items()):
            n = normalize(e)
            if not is_zero(n):
                entries.append((var, n))
        return VectorField(tuple(entries))

    def coeff(self, var: Var) -> Expr:
        for v, e in self.coeffs:
            if v == var:
                return e
        return ZERO

    def directions(self) -> tuple:
        return tuple(v for v, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, e: Expr) -> Expr:
        return apply(self, e)

    def __add__(self, other: "VectorField") -> "VectorField":
        out = {v: e for v, e in self.coeffs}
        for v, e in other.coeffs:
            out[v] = Add((out[v], e)) if v in out else e
        return VectorField.make(out)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + other.scale(num(-1))

    def scale(self, factor: Expr) -> "VectorField":
        return VectorField.make({v: Mul((factor, e)) for v, e in self.coeffs})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({e!r})*d_{v.name}" for v, e in self.coeffs)


def direction(var: Var) -> VectorField:
    """The coordinate field along one direction."""
    return VectorField.make({var: Rat(1)})


D_T, D_X1, D_X2, D_P1, D_P2, D_LAM = (direction(v) for v in Var)


def apply(field: VectorField, e: Expr) -> Expr:
    """Directional derivative sum(coeff * d/d(dir))(e), normalized."""
    pieces = []
    for var, coeff in field.coeffs:
        d = diff(e, var)
        if not is_zero(d):
            pieces.append(Mul((coeff, d)))
    if not pieces:
        return ZERO
    return normalize(Add(tuple(pieces)))


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    """[V, W]^a = V(W^a) - W(V^a) per direction."""
    out = {}
    for var in set(v.directions()) | set(w.directions()):
        out[var] = Add((apply(v, w.coeff(var)),
                        Mul((Rat(-1), apply(w, v.coeff(var))))))
    return VectorField.make(out)


def d_lambda(field: VectorField) -> VectorField:
    """Coefficient-wise derivative along the spectral parameter."""
    return VectorField.make(
        {v: diff(e, Var.lam) for v, e in field.coeffs}
    )


def field_substitute(field: VectorField, fn, body) -> VectorField:
    """Substitute a function into every coefficient."""
    return VectorField.make(
        {v: substitute_function(e, fn, body) for v, e in field.coeffs}
    )


def x_f(f1: Expr, f2: Expr) -> VectorField:
    """Total-derivative field of the second-order system
    ``d2x^i/dt2 = F^i(t, x, dx/dt)``:

        X = d_t + p1 d_x1 + p2 d_x2 + F1 d_p1 + F2 d_p2.
    """
    for label, f in (("F1", f1), ("F2", f2)):
        if Var.lam in free_vars(f):
            raise ExprError(f"{label} must not depend on lam")
    return VectorField.make(
        {
            Var.t: Rat(1),
            Var.x1: VarAtom(Var.p1),
            Var.x2: VarAtom(Var.p2),
            Var.p1: f1,
            Var.p2: f2,
        }
    )


def reduce_mod(w: VectorField, frame, residual_dirs):
    """Write ``w = sum(coeffs * frame) + residual`` exactly.

    ``residual_dirs`` are coordinate directions allowed to absorb whatever
    the frame does not span.  The implied linear system on the remaining
    directions must be square (after discarding directions where nothing
    occurs) and symbolically nonsingular; an overdetermined but consistent
    system is accepted.  Returns ``(coeffs, residual)`` with residual a
    dict over ``residual_dirs``.
    """
    frame = list(frame)
    residual_dirs = list(residual_dirs)
    occurring = set(w.directions())
    for f in frame:
        occurring.update(f.directions())
    rows = [v for v in sorted(occurring) if v not in residual_dirs]
    n = len(frame)
    if len(rows) < n:
        raise FrameError(
            f"only {len(rows)} constrained directions for {n} frame fields"
        )
    if not frame:
        coeffs = []
    else:
        matrix = [[f.coeff(v) for f in frame] for v in rows[:n]]
        rhs = [w.coeff(v) for v in rows[:n]]
        try:
            coeffs = solve_linear(matrix, rhs)
        except SingularMatrixError as exc:
            raise FrameError(f"singular frame: {exc}") from exc
        for v in rows[n:]:
            lhs = Add(
                tuple(Mul((c, f.coeff(v))) for c, f in zip(coeffs, frame))
            )
            if not is_zero(lhs - w.coeff(v)):
                raise FrameError(
                    f"frame cannot absorb the {v.name} component"
                )
    residual = {}
    for v in residual_dirs:
        delta = Add(
            (w.coeff(v),)
            + tuple(Mul((Rat(-1), Mul((c, f.coeff(v)))))
                    for c, f in zip(coeffs, frame))
        )
        residual[v] = normalize(delta)
    return coeffs, residual
