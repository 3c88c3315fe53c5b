"""Recursive-descent parser for the canonical expression grammar.

::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' int)?
    base   := number | var | jet | func '(' expr ')' | '(' expr ')' | '-' base
    var    := 't'|'x1'|'x2'|'p1'|'p2'|'lam'
    jet    := name ('_' varseq)?          e.g.  u_p1p1p2
    func   := sin|cos|sinh|cosh|exp|ln|arctan|arctanh|sqrt
    number := int | int '/' int | decimal

Numbers parse to exact rationals (decimals included).  Identifiers must be
declared: the builtin symbols are always available and callers may supply
extra ones.
"""

from __future__ import annotations

from fractions import Fraction

from .nodes import Add, Div, Expr, ExprError, Func, Jet, Mul, Pow, Rat, VarAtom
from .symbols import BUILTIN_FUNCTIONS, FUNC_KINDS, FunctionSymbol, VAR_BY_NAME, Var


class ParseError(ExprError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


_OPS = set("+-*/^()")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, object, int]] = []
        self._lex()

    def _lex(self) -> None:
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in _OPS:
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j < len(text) and text[j] == ".":
                    j += 1
                    if j == len(text) or not text[j].isdigit():
                        raise ParseError("malformed decimal", i)
                    while j < len(text) and text[j].isdigit():
                        j += 1
                self.tokens.append(("num", Fraction(text[i:j]), i))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("ident", text[i:j], i))
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("eof", None, len(text)))


def _split_varseq(seq: str, offset: int) -> tuple[Var, ...]:
    out = []
    i = 0
    while i < len(seq):
        if seq.startswith("lam", i):
            out.append(Var.lam)
            i += 3
        elif seq[i] in "xp" and i + 1 < len(seq) and seq[i + 1] in "12":
            out.append(VAR_BY_NAME[seq[i : i + 2]])
            i += 2
        elif seq[i] == "t":
            out.append(Var.t)
            i += 1
        else:
            raise ParseError(f"bad derivative list {seq!r}", offset)
    return tuple(out)


class _Parser:
    def __init__(self, text: str, symbols: dict):
        self.text = text
        self.symbols = symbols
        self.tokens = _Lexer(text).tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            t = self.term()
            terms.append(t if op == "+" else Mul((Rat(Fraction(-1)), t)))
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.factor()
            e = Mul((e, rhs)) if op == "*" else Div(e, rhs)
        return e

    def factor(self) -> Expr:
        b = self.base()
        if self.peek()[0] == "^":
            self.advance()
            sign = 1
            if self.peek()[0] == "-":
                self.advance()
                sign = -1
            tok = self.expect("num")
            value = tok[1]
            if value.denominator != 1:
                raise ParseError("exponent must be an integer", tok[2])
            return Pow(b, sign * int(value))
        return b

    def base(self) -> Expr:
        kind, value, offset = self.advance()
        if kind == "num":
            return Rat(value)
        if kind == "-":
            inner = self.base()
            return Mul((Rat(Fraction(-1)), inner))
        if kind == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "ident":
            return self._ident(value, offset)
        raise ParseError(f"unexpected token {value!r}", offset)

    def _ident(self, name: str, offset: int) -> Expr:
        if name in VAR_BY_NAME:
            return VarAtom(VAR_BY_NAME[name])
        if name in FUNC_KINDS:
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Func(name, arg)
        if "_" in name:
            fname, _, seq = name.partition("_")
            fn = self.symbols.get(fname)
            if fn is None:
                raise ParseError(f"unknown identifier {fname!r}", offset)
            derivs = _split_varseq(seq, offset)
            try:
                return Jet(fn, derivs)
            except ExprError as exc:
                raise ParseError(str(exc), offset) from None
        fn = self.symbols.get(name)
        if fn is None:
            raise ParseError(f"unknown identifier {name!r}", offset)
        return Jet(fn, ())


def parse(text: str, symbols: dict | None = None) -> Expr:
    """Parse canonical-grammar text into an (unnormalized) expression.

    ``symbols`` maps extra identifier names to :class:`FunctionSymbol`
    declarations; the builtins (u, v, F1, F2, r, s) are always known.
    """
    table = dict(BUILTIN_FUNCTIONS)
    if symbols:
        for name, fn in symbols.items():
            if not isinstance(fn, FunctionSymbol):
                raise ExprError(f"symbol table entry {name!r} is not a symbol")
            table[name] = fn
    return _Parser(text, table).parse()
