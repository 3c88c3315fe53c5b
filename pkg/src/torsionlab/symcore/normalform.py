"""Canonical normal form for expressions.

A normalized expression is a quotient ``num / den`` of two polynomials in
*atoms* (coordinates, jet coordinates, transcendental atoms), where

* each polynomial is a sum of monomials ``coefficient * atom1^e1 * ...``
  with exact rational coefficients and positive integer exponents,
  atoms sorted by a fixed total order;
* powers of ``cos`` and ``cosh`` atoms are kept below 2 by the rewrites
  ``cos(a)^2 -> 1 - sin(a)^2`` and ``cosh(a)^2 -> 1 + sinh(a)^2``;
* ``exp(n*lam)`` for integer n is eliminated in favour of
  ``(cosh(lam) + sinh(lam))^n`` (and ``cosh - sinh`` for negative n);
* the denominator is jet-free, not identically zero, monic in its leading
  coefficient, and shares no monomial factor with the numerator.

In this representation the monomials
``cos^i(lam) cosh^j(lam) sin^k(lam) sinh^l(lam)`` with ``i, j <= 1`` are
linearly independent as functions of ``lam``, which is what makes exact
coefficient comparison (and hence all zero tests) sound.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import isqrt

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
from .symbols import FUNC_KINDS, Var

Mono = tuple  # tuple[tuple[Expr, int], ...], sorted by atom key
Poly = dict  # dict[Mono, Fraction]

ONE_M: Mono = ()
P_ZERO: Poly = {}
P_ONE: Poly = {ONE_M: Fraction(1)}

_KIND_RANK = {kind: i for i, kind in enumerate(FUNC_KINDS)}


class NormalFormError(ExprError):
    pass


class DivisionByZero(NormalFormError):
    """Division by an expression that normalizes to zero."""


class JetDenominator(NormalFormError):
    """Division by an expression containing jet coordinates."""


# ---------------------------------------------------------------------------
# atom and monomial order


def atom_key(atom: Expr):
    if isinstance(atom, VarAtom):
        return (0, atom.var.value)
    if isinstance(atom, Jet):
        return (1, atom.fn.name, tuple(d.value for d in atom.derivs))
    if isinstance(atom, Func):
        return (2, _KIND_RANK[atom.kind], repr(atom.arg))
    raise NormalFormError(f"not an atom: {atom!r}")


def mono_cmp(m1: Mono, m2: Mono) -> int:
    """Pure lexicographic order, earlier atoms most significant."""
    i = j = 0
    while i < len(m1) or j < len(m2):
        if i == len(m1):
            return -1  # m2 still has a positive exponent somewhere
        if j == len(m2):
            return 1
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        k1, k2 = atom_key(a1), atom_key(a2)
        if k1 < k2:
            return 1  # m1 has the earlier atom with a positive power
        if k2 < k1:
            return -1
        if e1 != e2:
            return 1 if e1 > e2 else -1
        i += 1
        j += 1
    return 0


_MONO_KEY = cmp_to_key(mono_cmp)


def lead_mono(p: Poly) -> Mono:
    return max(p, key=_MONO_KEY)


def sorted_monos(p: Poly) -> list:
    """Monomials in descending lexicographic order (lead first)."""
    return sorted(p, key=_MONO_KEY, reverse=True)


# ---------------------------------------------------------------------------
# polynomial arithmetic


def p_const(q) -> Poly:
    q = Fraction(q)
    return {ONE_M: q} if q else {}


def p_atom(atom: Expr, exp: int = 1) -> Poly:
    return {((atom, exp),): Fraction(1)}


def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def p_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_scale(a: Poly, q: Fraction) -> Poly:
    if not q:
        return {}
    return {m: c * q for m, c in a.items()}


def _reduce_atom_powers(powers: dict) -> Poly:
    """Canonicalize a raw atom->exponent map into a polynomial.

    Applies the Pythagorean rewrites to cos/cosh powers above 1; all other
    atoms pass through unchanged.
    """
    plain = []
    expansions = []
    for atom, e in powers.items():
        if e == 0:
            continue
        if e < 0:
            raise NormalFormError("negative exponent inside a monomial")
        if isinstance(atom, Func) and atom.kind in ("cos", "cosh") and e >= 2:
            half, rest = divmod(e, 2)
            if atom.kind == "cos":
                partner = Func("sin", atom.arg)
                base = {ONE_M: Fraction(1), ((partner, 2),): Fraction(-1)}
            else:
                partner = Func("sinh", atom.arg)
                base = {ONE_M: Fraction(1), ((partner, 2),): Fraction(1)}
            expansions.append(p_pow(base, half))
            if rest:
                plain.append((atom, 1))
        else:
            plain.append((atom, e))
    plain.sort(key=lambda ae: atom_key(ae[0]))
    result: Poly = {tuple(plain): Fraction(1)}
    for f in expansions:
        result = p_mul(result, f)
    return result


def mono_mul(m1: Mono, m2: Mono) -> Poly:
    powers: dict = {}
    for atom, e in m1:
        powers[atom] = powers.get(atom, 0) + e
    for atom, e in m2:
        powers[atom] = powers.get(atom, 0) + e
    return _reduce_atom_powers(powers)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            c = c1 * c2
            for m, q in mono_mul(m1, m2).items():
                s = out.get(m, 0) + c * q
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
    return out


def p_pow(a: Poly, n: int) -> Poly:
    if n < 0:
        raise NormalFormError("p_pow expects a non-negative exponent")
    result = dict(P_ONE)
    base = a
    while n:
        if n & 1:
            result = p_mul(result, base)
        base_needed = n >> 1
        if base_needed:
            base = p_mul(base, base)
        n = base_needed
    return result


def p_is_jet_free(p: Poly) -> bool:
    return all(
        not isinstance(atom, Jet) for m in p for atom, _ in m
    )


def p_has_var(p: Poly, var: Var) -> bool:
    """Whether the variable occurs anywhere, including inside atom arguments."""
    from .calculus import free_vars  # local import to avoid a cycle

    for m in p:
        for atom, _ in m:
            if var in free_vars(atom):
                return True
    return False


# ---------------------------------------------------------------------------
# exact division


def mono_div(m1: Mono, m2: Mono):
    """m1 / m2 as a monomial, or None if some exponent would go negative."""
    powers = {atom: e for atom, e in m1}
    for atom, e in m2:
        have = powers.get(atom, 0)
        if have < e:
            return None
        if have == e:
            del powers[atom]
        else:
            powers[atom] = have - e
    items = sorted(powers.items(), key=lambda ae: atom_key(ae[0]))
    return tuple(items)


def p_divide_exact(n: Poly, d: Poly):
    """Exact quotient n / d, or None when no quotient is found.

    Single-divisor long division with respect to the lexicographic order.
    Each reduction step uses true ring multiplication, so a zero remainder
    really proves ``n == q * d``.  Completeness holds whenever the divisor
    contains no power-capped atoms (cos/cosh); otherwise the division is a
    sound best effort.
    """
    if not d:
        return None
    if not n:
        return {}
    dl = lead_mono(d)
    dc = d[dl]
    q: Poly = {}
    r = dict(n)
    prev = None
    while r:
        rl = lead_mono(r)
        if prev is not None and mono_cmp(rl, prev) >= 0:
            return None  # reduction stalled; lead must strictly decrease
        prev = rl
        qm = mono_div(rl, dl)
        if qm is None:
            return None
        coeff = r[rl] / dc
        q[qm] = q.get(qm, 0) + coeff
        r = p_sub(r, p_mul({qm: coeff}, d))
    return {m: c for m, c in q.items() if c}


# ---------------------------------------------------------------------------
# rational forms


def _mono_gcd(monos) -> dict:
    it = iter(monos)
    try:
        first = next(it)
    except StopIteration:
        return {}
    common = {atom: e for atom, e in first}
    for m in it:
        if not common:
            break
        powers = {atom: e for atom, e in m}
        for atom in list(common):
            e = powers.get(atom, 0)
            if e == 0:
                del common[atom]
            else:
                common[atom] = min(common[atom], e)
    return common


def _strip_mono(p: Poly, gcd: dict) -> Poly:
    out = {}
    for m, c in p.items():
        powers = {atom: e for atom, e in m}
        for atom, e in gcd.items():
            powers[atom] -= e
            if not powers[atom]:
                del powers[atom]
        items = sorted(powers.items(), key=lambda ae: atom_key(ae[0]))
        out[tuple(items)] = c
    return out


def rf_simplify(num: Poly, den: Poly) -> tuple:
    if not den:
        raise DivisionByZero("denominator normalizes to zero")
    if not num:
        return {}, dict(P_ONE)
    if den != P_ONE:
        gcd = _mono_gcd(list(num) + list(den))
        if gcd:
            num = _strip_mono(num, gcd)
            den = _strip_mono(den, gcd)
        if den != P_ONE:
            q = p_divide_exact(num, den)
            if q is not None:
                num, den = q, dict(P_ONE)
    if len(den) == 1 and ONE_M in den:
        scale = den[ONE_M]
        if scale != 1:
            num = p_scale(num, 1 / scale)
        return num, dict(P_ONE)
    lc = den[lead_mono(den)]
    if lc != 1:
        num = p_scale(num, 1 / lc)
        den = p_scale(den, 1 / lc)
    return num, den


def rf_add(a, b):
    an, ad = a
    bn, bd = b
    if ad == bd:
        return rf_simplify(p_add(an, bn), ad)
    return rf_simplify(p_add(p_mul(an, bd), p_mul(bn, ad)), p_mul(ad, bd))


def rf_neg(a):
    return p_neg(a[0]), a[1]


def rf_mul(a, b):
    return rf_simplify(p_mul(a[0], b[0]), p_mul(a[1], b[1]))


def rf_scale(a, q):
    return p_scale(a[0], q), a[1]


def rf_div(a, b):
    bn, bd = b
    if not bn:
        raise DivisionByZero("division by an expression that is identically zero")
    if not p_is_jet_free(bn):
        raise JetDenominator(
            "division by an expression containing jet coordinates"
        )
    return rf_simplify(p_mul(a[0], bd), p_mul(a[1], bn))


def rf_pow(a, n: int):
    if n >= 0:
        return rf_simplify(p_pow(a[0], n), p_pow(a[1], n))
    return rf_div((dict(P_ONE), dict(P_ONE)), rf_pow(a, -n))


def rf_is_zero(a) -> bool:
    return not a[0]


RF_ZERO = ({}, dict(P_ONE))


# ---------------------------------------------------------------------------
# tree -> normal form


def _fold_constant_atom(kind: str, arg_rf):
    """Fold transcendental atoms at special exact arguments; None otherwise."""
    num, den = arg_rf
    if den != P_ONE or (num and set(num) != {ONE_M}):
        return None
    q = num.get(ONE_M, Fraction(0))
    if kind in ("sin", "sinh", "arctan", "arctanh") and q == 0:
        return RF_ZERO
    if kind in ("cos", "cosh", "exp") and q == 0:
        return dict(P_ONE), dict(P_ONE)
    if kind == "ln" and q == 1:
        return RF_ZERO
    if kind == "sqrt" and q >= 0:
        pn, pd = isqrt(q.numerator), isqrt(q.denominator)
        if pn * pn == q.numerator and pd * pd == q.denominator:
            return p_const(Fraction(pn, pd)), dict(P_ONE)
    return None


def _exp_lambda_multiple(arg_rf):
    """Integer n when the argument is exactly n*lam, else None."""
    num, den = arg_rf
    if den != P_ONE or len(num) != 1:
        return None
    (mono, coeff), = num.items()
    if len(mono) != 1:
        return None
    atom, e = mono[0]
    if e == 1 and isinstance(atom, VarAtom) and atom.var == Var.lam:
        if coeff.denominator == 1:
            return int(coeff)
    return None


_LAM_COSH = Func("cosh", VarAtom(Var.lam))
_LAM_SINH = Func("sinh", VarAtom(Var.lam))


def nf(e: Expr):
    """Normal form of an expression tree as a (num, den) pair."""
    if isinstance(e, Rat):
        return p_const(e.value), dict(P_ONE)
    if isinstance(e, (VarAtom, Jet)):
        return p_atom(e), dict(P_ONE)
    if isinstance(e, Func):
        arg_rf = nf(e.arg)
        folded = _fold_constant_atom(e.kind, arg_rf)
        if folded is not None:
            return folded
        if e.kind == "exp":
            n = _exp_lambda_multiple(arg_rf)
            if n is not None:
                base = {
                    ((_LAM_COSH, 1),): Fraction(1),
                    ((_LAM_SINH, 1),): Fraction(1 if n > 0 else -1),
                }
                return p_pow(base, abs(n)), dict(P_ONE)
        atom = Func(e.kind, rf_to_expr(arg_rf))
        return p_atom(atom), dict(P_ONE)
    if isinstance(e, Add):
        acc = RF_ZERO
        for term in e.terms:
            acc = rf_add(acc, nf(term))
        return acc
    if isinstance(e, Mul):
        acc = (dict(P_ONE), dict(P_ONE))
        for factor in e.factors:
            acc = rf_mul(acc, nf(factor))
        return acc
    if isinstance(e, Pow):
        return rf_pow(nf(e.base), e.exp)
    if isinstance(e, Div):
        return rf_div(nf(e.num), nf(e.den))
    raise NormalFormError(f"cannot normalize {e!r}")


# ---------------------------------------------------------------------------
# normal form -> canonical tree


def _mono_to_factors(m: Mono) -> list:
    factors = []
    for atom, e in m:
        factors.append(atom if e == 1 else Pow(atom, e))
    return factors


def poly_to_expr(p: Poly) -> Expr:
    if not p:
        return Rat(Fraction(0))
    terms = []
    for m in sorted_monos(p):
        c = p[m]
        factors = _mono_to_factors(m)
        if not factors:
            terms.append(Rat(c))
        elif c == 1:
            terms.append(factors[0] if len(factors) == 1 else Mul(tuple(factors)))
        else:
            terms.append(Mul(tuple([Rat(c)] + factors)))
    return terms[0] if len(terms) == 1 else Add(tuple(terms))


def rf_to_expr(rf) -> Expr:
    num, den = rf
    if den == P_ONE:
        return poly_to_expr(num)
    return Div(poly_to_expr(num), poly_to_expr(den))


def normalize(e: Expr) -> Expr:
    """Canonical form: idempotent, value-preserving, exact."""
    return rf_to_expr(nf(e))


def is_zero(e: Expr) -> bool:
    return rf_is_zero(nf(e))


def equivalent(a: Expr, b: Expr) -> bool:
    """Exact equality of values on the common domain."""
    return is_zero(a - b)


def poly_of(e: Expr) -> Poly:
    """The polynomial of a denominator-free expression."""
    num, den = nf(e)
    if den != P_ONE:
        raise NormalFormError(f"expression is not polynomial: {e!r}")
    return num


def poly_monic(p: Poly) -> Poly:
    """Scale so the leading coefficient is 1 (content-normalized)."""
    if not p:
        return {}
    lc = p[lead_mono(p)]
    return p_scale(p, 1 / lc) if lc != 1 else dict(p)
