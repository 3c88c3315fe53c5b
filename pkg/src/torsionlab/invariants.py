"""Pointwise invariants of a pair of second-order ODEs.

For the system ``d2x^i/dt2 = F^i(t, x, dx/dt)`` the trace-free torsion
matrix and the curvature tensor are

    T^i_j = F^i_j - 1/2 delta^i_j F^k_k
    F^i_j = -d_{x^j} F^i + 1/2 X(d_{p^j} F^i) - 1/4 d_{p^k} F^i d_{p^j} F^k
    R^i_{jkl} = F^i_{jkl} - 3/4 avg_{(j,k,l)} [ F^r_{rjk} delta^i_l ]
    F^i_{jkl} = d_{p^j} d_{p^k} d_{p^l} F^i

with X the total-derivative field.  The torsion is meaningful only up to a
scalar factor, so classification uses rank and determinant sign alone.
Both invariants can also be produced frame-wise: a projective section X
and a normal frame (V1, V2) satisfy ``[X,[X,V_i]] = T_i^j V_j`` modulo X
and a chosen complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .jetfield import VectorField, apply, lie_bracket, reduce_mod, x_f
from .symcore import (
    Add,
    Assignment,
    Expr,
    ExprError,
    Mul,
    Rat,
    Var,
    diff,
    eval_num,
    is_zero,
    normalize,
)

_IDX = (Var.x1, Var.x2)
_P = (Var.p1, Var.p2)


class ClassificationError(ExprError):
    """Raised when a numeric classification sits on a decision boundary."""


class TorsionClass(Enum):
    Zero = "zero"
    Rank1 = "rank-1"
    Rank2Real = "rank-2 real roots"
    Rank2Complex = "rank-2 complex roots"


#: model cone attached to each torsion class
CONE_MODEL = {
    TorsionClass.Zero: "quadric",
    TorsionClass.Rank1: "cayley cubic",
    TorsionClass.Rank2Real: "real-root ruled surface",
    TorsionClass.Rank2Complex: "complex-root ruled surface",
}


@dataclass(frozen=True)
class TorsionMatrix:
    entries: tuple  # ((T11, T12), (T21, T22))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_trace_free(self) -> bool:
        return is_zero(Add((self.entries[0][0], self.entries[1][1])))

    def det(self) -> Expr:
        a, b = self.entries[0]
        c, d = self.entries[1]
        return normalize(a * d - b * c)

    def is_zero(self) -> bool:
        return all(is_zero(e) for row in self.entries for e in row)

    def scale(self, factor) -> "TorsionMatrix":
        return TorsionMatrix(
            tuple(
                tuple(normalize(Mul((factor, e))) for e in row)
                for row in self.entries
            )
        )


@dataclass(frozen=True)
class CurvatureTensor:
    entries: tuple  # [i][j][k][l]

    def __getitem__(self, ijkl):
        i, j, k, l = ijkl
        return self.entries[i][j][k][l]

    def is_symmetric(self) -> bool:
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        base = self.entries[i][j][k][l]
                        for a, b, c in ((j, l, k), (k, j, l), (l, k, j)):
                            if not is_zero(base - self.entries[i][a][b][c]):
                                return False
        return True

    def is_zero(self) -> bool:
        return all(
            is_zero(self.entries[i][j][k][l])
            for i in range(2)
            for j in range(2)
            for k in range(2)
            for l in range(2)
        )


def _matrix(fn) -> tuple:
    return tuple(tuple(normalize(fn(i, j)) for j in range(2)) for i in range(2))


def fels_f_matrix(f1: Expr, f2: Expr) -> tuple:
    """The 2x2 matrix F^i_j of the right-hand sides."""
    f = (f1, f2)
    x = x_f(f1, f2)
    dp = tuple(tuple(diff(f[i], _P[j]) for j in range(2)) for i in range(2))

    def entry(i, j):
        quad = Add(tuple(Mul((dp[i][k], dp[k][j])) for k in range(2)))
        return (
            -diff(f[i], _IDX[j])
            + Rat(Fraction(1, 2)) * apply(x, dp[i][j])
            - Rat(Fraction(1, 4)) * quad
        )

    return _matrix(entry)


def fels_torsion(f1: Expr, f2: Expr) -> TorsionMatrix:
    """Trace-free torsion matrix of the ODE pair."""
    m = fels_f_matrix(f1, f2)
    half_trace = Rat(Fraction(1, 2)) * (m[0][0] + m[1][1])

    def entry(i, j):
        e = m[i][j]
        if i == j:
            e = e - half_trace
        return e

    return TorsionMatrix(_matrix(entry))


def fels_curvature(f1: Expr, f2: Expr) -> CurvatureTensor:
    """Curvature tensor; symmetrization over (j,k,l) is the unweighted
    average over all six permutations."""
    f = (f1, f2)

    def fjkl(i, j, k, l):
        return diff(diff(diff(f[i], _P[j]), _P[k]), _P[l])

    def trace2(j, k):  # F^r_{rjk}
        return Add(tuple(fjkl(r, r, j, k) for r in range(2)))

    def entry(i, j, k, l):
        sym = Add(
            (
                Mul((trace2(j, k), _delta(i, l))),
                Mul((trace2(j, l), _delta(i, k))),
                Mul((trace2(k, l), _delta(i, j))),
            )
        )
        return fjkl(i, j, k, l) - Rat(Fraction(1, 4)) * sym

    entries = tuple(
        tuple(
            tuple(
                tuple(normalize(entry(i, j, k, l)) for l in range(2))
                for k in range(2)
            )
            for j in range(2)
        )
        for i in range(2)
    )
    return CurvatureTensor(entries)


def _delta(i, j) -> Expr:
    return Rat(Fraction(1 if i == j else 0))


# ---------------------------------------------------------------------------
# classification


def _exact_rational(e: Expr):
    n = normalize(e)
    if isinstance(n, Rat):
        return n.value
    return None


def classify(t: TorsionMatrix, at: Assignment | None = None) -> TorsionClass:
    """Rank/determinant-sign classification of a trace-free 2x2 matrix.

    Constant matrices are classified exactly.  Non-constant ones need an
    evaluation point; a determinant within 1e-12 of zero on a nonzero
    matrix is reported as undecidable rather than guessed.
    """
    values = [_exact_rational(e) for row in t.entries for e in row]
    if all(v is not None for v in values):
        det = values[0] * values[3] - values[1] * values[2]
        if all(v == 0 for v in values):
            return TorsionClass.Zero
        if det == 0:
            return TorsionClass.Rank1
        return TorsionClass.Rank2Real if det < 0 else TorsionClass.Rank2Complex
    if at is None:
        raise ClassificationError(
            "non-constant torsion needs an evaluation point"
        )
    nums = [eval_num(normalize(e), at) for row in t.entries for e in row]
    if all(abs(v) <= 1e-12 for v in nums):
        return TorsionClass.Zero
    det = nums[0] * nums[3] - nums[1] * nums[2]
    if abs(det) <= 1e-12:
        scale = max(abs(v) for v in nums)
        if abs(det) > 1e-12 * scale * scale:
            pass  # comfortably nonzero relative to the entries
        else:
            raise ClassificationError(
                "boundary, undecided: |det| <= 1e-12 but T != 0"
            )
    return TorsionClass.Rank2Real if det < 0 else TorsionClass.Rank2Complex


# ---------------------------------------------------------------------------
# frame-wise torsion


def frame_torsion(x: VectorField, v1: VectorField, v2: VectorField,
                  complement=()) -> tuple:
    """Solve ``[X,[X,V_i]] = T_i^j V_j mod span(X, complement)``.

    Returns the 2x2 matrix (T_i^j); the frame (V1, V2, X, *complement)
    must span every occurring direction.
    """
    frame = [v1, v2, x, *complement]
    rows = []
    for vi in (v1, v2):
        w = lie_bracket(x, lie_bracket(x, vi))
        coeffs, _ = reduce_mod(w, frame, ())
        rows.append((coeffs[0], coeffs[1]))
    return (tuple(rows[0]), tuple(rows[1]))


# ---------------------------------------------------------------------------
# projective sections: Schwarzian condition and the operators on matrices


def schwarzian_residual(f: Expr, x: VectorField) -> Expr:
    """``f X(X(f)) - 2 X(f)^2``; zero iff f X reparameterizes X projectively."""
    xf = apply(x, f)
    return normalize(f * apply(x, xf) - 2 * xf * xf)


def nabla(a: tuple, x: VectorField) -> tuple:
    """Entrywise action of X on a 2x2 matrix of expressions."""
    return tuple(tuple(apply(x, e) for e in row) for row in a)


def kron(a: tuple, b: tuple) -> tuple:
    """Kronecker tensor of two 2x2 matrices: (a (x) b)[i][j][k][l]."""
    return tuple(
        tuple(
            tuple(
                tuple(normalize(Mul((a[i][j], b[k][l]))) for l in range(2))
                for k in range(2)
            )
            for j in range(2)
        )
        for i in range(2)
    )


def _tensor_combine(scale_pairs) -> tuple:
    def entry(i, j, k, l):
        return normalize(
            Add(tuple(Mul((Rat(q), t[i][j][k][l])) for q, t in scale_pairs))
        )

    return tuple(
        tuple(
            tuple(tuple(entry(i, j, k, l) for l in range(2)) for k in range(2))
            for j in range(2)
        )
        for i in range(2)
    )


def shat(a: tuple, x: VectorField) -> tuple:
    """Second-order operator
    ``1/2 (X^2 A (x) A + A (x) X^2 A) - 5/4 (X A (x) X A)``."""
    da = nabla(a, x)
    dda = nabla(da, x)
    return _tensor_combine(
        [
            (Fraction(1, 2), kron(dda, a)),
            (Fraction(1, 2), kron(a, dda)),
            (Fraction(-5, 4), kron(da, da)),
        ]
    )
