"""Horizontal frames and the two dispersionless Lax pairs.

Both model cases share the slice fields

    E3 = d_x1 + u_p1 d_p1 + v_p1 d_p2
    E4 = d_x2 + u_p2 d_p1 + v_p2 d_p2

with formal unknowns u, v of (x1, x2, p1, p2).  The horizontal frame
(Y0, Y1) mixes (d_p1, d_p2, E3, E4) with trigonometric/hyperbolic
coefficients in the spectral parameter; the Lax fields are
``L_i = Y_i + eta_i d_lam`` where (eta0, eta1) is the unique pair making
the d_p1 and d_p2 components of ``[L0, L1] mod d_lam`` vanish in the
basis (Y0, Y1, d_p1, d_p2).  The leftover components of ``[L0, L1]``
modulo (L0, L1) are the integrability obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .jetfield import (
    D_P1,
    D_P2,
    VectorField,
    apply,
    d_lambda,
    field_substitute,
    lie_bracket,
    reduce_mod,
)
from .symcore import (
    Expr,
    LAM,
    U,
    V,
    Var,
    ZERO,
    cos,
    cosh,
    equivalent,
    exp,
    is_zero,
    jet,
    normalize,
    num,
    render_canonical,
    sin,
    sinh,
    solve_linear,
    substitute_var,
)


class CaseTag(Enum):
    RealRoots = "real"
    ComplexRoots = "complex"


def _slice_fields():
    e3 = VectorField.make(
        {Var.x1: num(1), Var.p1: jet(U, Var.p1), Var.p2: jet(V, Var.p1)}
    )
    e4 = VectorField.make(
        {Var.x2: num(1), Var.p1: jet(U, Var.p2), Var.p2: jet(V, Var.p2)}
    )
    return e3, e4


E3, E4 = _slice_fields()


@dataclass(frozen=True)
class LaxPair:
    case: CaseTag
    y0: VectorField
    y1: VectorField
    eta0: Expr
    eta1: Expr

    @property
    def l0(self) -> VectorField:
        return self.y0 + VectorField.make({Var.lam: self.eta0})

    @property
    def l1(self) -> VectorField:
        return self.y1 + VectorField.make({Var.lam: self.eta1})

    def substitute(self, u_body: Expr, v_body: Expr) -> "LaxPair":
        def sub_field(f):
            return field_substitute(field_substitute(f, U, u_body), V, v_body)

        def sub_expr(e):
            from .symcore import substitute_function

            return substitute_function(
                substitute_function(e, U, u_body), V, v_body
            )

        return LaxPair(
            self.case,
            sub_field(self.y0),
            sub_field(self.y1),
            sub_expr(self.eta0),
            sub_expr(self.eta1),
        )


def horizontal_frame(case: CaseTag) -> tuple:
    """The frame (Y0, Y1) with formal u, v."""
    if case is CaseTag.RealRoots:
        y0 = VectorField.make({Var.p1: cos(LAM)}) + E3.scale(sin(LAM))
        y1 = VectorField.make({Var.p2: cosh(LAM)}) + E4.scale(sinh(LAM))
        return y0, y1
    g = num("1/2") * (sinh(LAM) * cos(LAM) + cosh(LAM) * sin(LAM))
    h = num("1/2") * (sinh(LAM) * cos(LAM) - cosh(LAM) * sin(LAM))
    y0 = (
        VectorField.make(
            {Var.p1: cosh(LAM) * cos(LAM), Var.p2: -(sinh(LAM) * sin(LAM))}
        )
        + E3.scale(g)
        + E4.scale(h)
    )
    y1 = (
        VectorField.make(
            {Var.p1: sinh(LAM) * sin(LAM), Var.p2: cosh(LAM) * cos(LAM)}
        )
        + E3.scale(-1 * h)
        + E4.scale(g)
    )
    return y0, y1


def raw_complex_frame() -> tuple:
    """The exponential frame before the initial-condition adjustment."""
    v1 = (
        VectorField.make({Var.p1: exp(LAM) * cos(LAM)})
        + VectorField.make({Var.p2: exp(LAM) * sin(LAM)})
        + E3.scale(exp(-1 * LAM) * cos(LAM))
        + E4.scale(exp(-1 * LAM) * sin(LAM))
    )
    v2 = (
        VectorField.make({Var.p1: exp(LAM) * sin(LAM)})
        + VectorField.make({Var.p2: -1 * exp(LAM) * cos(LAM)})
        + E3.scale(-1 * exp(-1 * LAM) * sin(LAM))
        + E4.scale(exp(-1 * LAM) * cos(LAM))
    )
    return v1, v2


# ---------------------------------------------------------------------------
# eta: defining conditions and solver


def _p_functionals(y0: VectorField, y1: VectorField, w: VectorField):
    """The d_p1 / d_p2 components of w in the basis (Y0, Y1, d_p1, d_p2)."""
    _, residual = reduce_mod(w, (y0, y1), (Var.p1, Var.p2))
    return residual[Var.p1], residual[Var.p2]


@dataclass(frozen=True)
class EtaDerivation:
    case: CaseTag
    eta0: Expr
    eta1: Expr
    determinant: Expr
    singular_locus: str
    matches_closed_form: bool
    closed_form_diff: tuple  # (eta0 - closed0, eta1 - closed1) normalized


@lru_cache(maxsize=None)
def solve_eta(case: CaseTag) -> EtaDerivation:
    """Solve the vanishing conditions for (eta0, eta1) exactly."""
    y0, y1 = horizontal_frame(case)
    bracket = lie_bracket(y0, y1)
    dy0 = d_lambda(y0)
    dy1 = d_lambda(y1)
    c_b, d_b = _p_functionals(y0, y1, bracket)
    c_p, d_p = _p_functionals(y0, y1, dy1)
    c_q, d_q = _p_functionals(y0, y1, dy0)
    matrix = [[c_p, -1 * c_q], [d_p, -1 * d_q]]
    rhs = [-1 * c_b, -1 * d_b]
    eta0, eta1 = solve_linear(matrix, rhs)
    det = normalize(c_p * (-1 * d_q) - (-1 * c_q) * d_p)
    locus = _denominator_locus([c_p, c_q, d_p, d_q, det])
    closed0, closed1 = closed_form_eta(case)
    diff0 = normalize(eta0 - closed0)
    diff1 = normalize(eta1 - closed1)
    matches = is_zero(diff0) and is_zero(diff1)
    return EtaDerivation(
        case, eta0, eta1, det, locus, matches, (diff0, diff1)
    )


def _denominator_locus(exprs) -> str:
    from .symcore.nodes import Div

    seen = []
    for e in exprs:
        if isinstance(e, Div):
            d = render_canonical(e.den)
            if d not in seen:
                seen.append(d)
    if not seen:
        return "none"
    return " * ".join(f"({d})" for d in seen) + " = 0"


def eta_condition_residuals(case: CaseTag, eta0: Expr, eta1: Expr) -> tuple:
    """The two vanishing conditions evaluated on a candidate (eta0, eta1)."""
    y0, y1 = horizontal_frame(case)
    w = (
        lie_bracket(y0, y1)
        + d_lambda(y1).scale(eta0)
        + d_lambda(y0).scale(-1 * eta1)
    )
    return _p_functionals(y0, y1, w)


def closed_form_eta(case: CaseTag) -> tuple:
    """Literal transcription of the reference closed forms, normalized."""
    y0, y1 = horizontal_frame(case)
    up1, up2 = jet(U, Var.p1), jet(U, Var.p2)
    vp1, vp2 = jet(V, Var.p1), jet(V, Var.p2)
    if case is CaseTag.RealRoots:
        eta0 = sinh(LAM) ** 2 * apply(y0, vp2) - sin(LAM) * sinh(LAM) * apply(
            y1, vp1
        )
        eta1 = sin(LAM) ** 2 * apply(y1, up1) - sin(LAM) * sinh(LAM) * apply(
            y0, up2
        )
        return normalize(eta0), normalize(eta1)
    minus = sinh(LAM) * cos(LAM) - cosh(LAM) * sin(LAM)
    plus = sinh(LAM) * cos(LAM) + cosh(LAM) * sin(LAM)
    u_block = minus * (apply(y0, up1) + apply(y1, up2)) - plus * (
        apply(y0, up2) - apply(y1, up1)
    )
    v_block = minus * (apply(y0, vp1) + apply(y1, vp2)) + plus * (
        apply(y0, vp2) - apply(y1, vp1)
    )
    eta0 = minus * u_block + plus * v_block
    eta1 = -1 * plus * u_block + minus * v_block
    return normalize(eta0), normalize(eta1)


@lru_cache(maxsize=None)
def lax_pair(case: CaseTag) -> LaxPair:
    """The Lax pair with the solver's eta (the defining conditions win)."""
    y0, y1 = horizontal_frame(case)
    derivation = solve_eta(case)
    return LaxPair(case, y0, y1, derivation.eta0, derivation.eta1)


# ---------------------------------------------------------------------------
# integrability obstruction


def closure_obstruction(case: CaseTag, u_body: Expr | None = None,
                        v_body: Expr | None = None) -> list:
    """Residual components of [L0, L1] modulo (L0, L1).

    Returns the normalized coefficients along (d_p1, d_p2, d_lam) after
    reduction; the pair is a Lax pair for given (u, v) iff all vanish.
    With formal u, v the d_p1/d_p2 residuals vanish identically and the
    d_lam residual carries the full PDE content.
    """
    pair = lax_pair(case)
    if u_body is not None or v_body is not None:
        pair = pair.substitute(
            u_body if u_body is not None else jet(U),
            v_body if v_body is not None else jet(V),
        )
    l0, l1 = pair.l0, pair.l1
    bracket = lie_bracket(l0, l1)
    if bracket.is_zero():
        return [ZERO, ZERO, ZERO]
    _, residual = reduce_mod(
        bracket, (l0, l1), (Var.p1, Var.p2, Var.lam)
    )
    return [residual[Var.p1], residual[Var.p2], residual[Var.lam]]


# ---------------------------------------------------------------------------
# initial conditions at lam = 0


@dataclass(frozen=True)
class InitialConditionReport:
    case: CaseTag
    adjusted: bool
    frame_ok: bool
    derivative_ok: bool

    @property
    def passed(self) -> bool:
        return self.frame_ok and self.derivative_ok


def _field_at_zero(f: VectorField) -> VectorField:
    return VectorField.make(
        {v: substitute_var(e, Var.lam, num(0)) for v, e in f.coeffs}
    )


def _fields_equal(a: VectorField, b: VectorField) -> bool:
    for v in set(a.directions()) | set(b.directions()):
        if not equivalent(a.coeff(v), b.coeff(v)):
            return False
    return True


def initial_condition_check(case: CaseTag, adjusted: bool = True
                            ) -> InitialConditionReport:
    """Frame values and first lambda-derivatives at lam = 0.

    The frame must restrict to (d_p1, d_p2) and its derivative must give
    (E3, E4).  With ``adjusted=False`` in the complex case the raw
    exponential frame is tested instead (it fails the restriction).
    """
    if case is CaseTag.ComplexRoots and not adjusted:
        y0, y1 = raw_complex_frame()
    else:
        y0, y1 = horizontal_frame(case)
    frame_ok = _fields_equal(_field_at_zero(y0), D_P1) and _fields_equal(
        _field_at_zero(y1), D_P2
    )
    derivative_ok = _fields_equal(
        _field_at_zero(d_lambda(y0)), E3
    ) and _fields_equal(_field_at_zero(d_lambda(y1)), E4)
    return InitialConditionReport(case, adjusted, frame_ok, derivative_ok)
