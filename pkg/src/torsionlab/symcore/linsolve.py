"""Exact symbolic linear solving.

Gaussian elimination over the field of normalized quotients, with full
pivoting.  Pivot candidates are zero-tested exactly; jet-free pivots are
preferred so that quotients keep denominators free of unknowns.  On a
symbolically singular system the vanishing determinant is reported.
"""

from __future__ import annotations

from .nodes import Div, Expr, ExprError, Rat
from .normalform import (
    JetDenominator,
    P_ONE,
    equivalent,
    nf,
    p_is_jet_free,
    rf_add,
    rf_div,
    rf_is_zero,
    rf_mul,
    rf_neg,
    rf_to_expr,
)


class SingularMatrixError(ExprError):
    def __init__(self, message: str, minor: Expr | None = None):
        super().__init__(message)
        self.minor = minor


def determinant(rows: list) -> Expr:
    """Symbolic determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    grid = [[nf(e) for e in row] for row in rows]
    return rf_to_expr(_det_rf(grid, list(range(n)), list(range(n))))


def _det_rf(grid, rows, cols):
    if len(rows) == 1:
        return grid[rows[0]][cols[0]]
    acc = ({}, dict(P_ONE))
    sign = 1
    for idx, c in enumerate(cols):
        entry = grid[rows[0]][c]
        if not rf_is_zero(entry):
            sub = _det_rf(grid, rows[1:], cols[:idx] + cols[idx + 1 :])
            piece = rf_mul(entry, sub)
            acc = rf_add(acc, piece if sign > 0 else rf_neg(piece))
        sign = -sign
    return acc


def _pivot_badness(rf) -> tuple:
    num, den = rf
    jetty = 0 if p_is_jet_free(num) else 1
    return (jetty, len(num) + len(den))


def solve_linear(matrix: list, rhs: list) -> list:
    """Solve ``A x = b`` exactly; entries are expressions.

    Returns the solution vector, normalized.  Raises
    :class:`SingularMatrixError` when the matrix is symbolically singular,
    carrying the vanishing determinant as evidence.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ExprError("solve_linear expects a square system")
    a = [[nf(e) for e in row] for row in matrix]
    b = [nf(e) for e in rhs]

    col_of = list(range(n))  # column permutation
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                entry = a[i][j]
                if rf_is_zero(entry):
                    continue
                score = _pivot_badness(entry)
                if best is None or score < best[0]:
                    best = (score, i, j)
        if best is None:
            det = determinant(matrix)
            raise SingularMatrixError(
                "symbolically singular matrix", minor=det
            )
        _, pi, pj = best
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            b[k], b[pi] = b[pi], b[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            col_of[k], col_of[pj] = col_of[pj], col_of[k]
        pivot = a[k][k]
        for i in range(k + 1, n):
            if rf_is_zero(a[i][k]):
                continue
            factor = rf_div(a[i][k], pivot)
            for j in range(k, n):
                a[i][j] = rf_add(a[i][j], rf_neg(rf_mul(factor, a[k][j])))
            b[i] = rf_add(b[i], rf_neg(rf_mul(factor, b[k])))

    x = [None] * n
    for k in range(n - 1, -1, -1):
        acc = b[k]
        for j in range(k + 1, n):
            acc = rf_add(acc, rf_neg(rf_mul(a[k][j], x[j])))
        x[k] = rf_div(acc, a[k][k])

    solution = [None] * n
    for k in range(n):
        solution[col_of[k]] = rf_to_expr(x[k])

    _check_residual(matrix, solution, rhs)
    return solution


def _check_residual(matrix, solution, rhs) -> None:
    from .nodes import Add, Mul, Rat  # local, avoids import noise at top
    from fractions import Fraction

    for row, b in zip(matrix, rhs):
        residual = Add(
            tuple(Mul((aij, xj)) for aij, xj in zip(row, solution))
            + (Mul((Rat(Fraction(-1)), b)),)
        )
        if not equivalent(residual, Rat(Fraction(0))):  # pragma: no cover
            raise ExprError("internal error: linear solve residual is nonzero")
