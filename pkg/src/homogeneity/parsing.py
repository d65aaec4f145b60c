"""Recursive-descent parser for the expression language used in model files.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | IDENT | "conj" "(" IDENT ")" | "(" expr ")"

``i`` is the imaginary unit in complex mode.  Division by a constant or by
a monomial in parameter variables stays polynomial (Laurent); any other
division produces a :class:`RationalExpr`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .polynomial import (
    LaurentError,
    Polynomial,
    RationalExpr,
    Variable,
    simplify_expr,
)
from .scalars import I


class ParseError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        self.text = text
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.bare_message = message
        super().__init__(f"{message} at line {self.line}, column {self.column}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))", re.S)


@dataclass
class _Tok:
    kind: str  # int, ident, op, end
    value: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _is_scalar(e) -> bool:
    return isinstance(e, Polynomial) and e.is_constant()


def _divide(num, den, text, pos):
    if not den:
        raise ParseError("division by zero", text, pos)
    if _is_scalar(den):
        c = den.constant_term()
        return num * (Fraction(1) / c if isinstance(c, Fraction) else 1 / c)
    if isinstance(den, Polynomial) and len(den.terms) == 1:
        try:
            return num * den ** -1
        except LaurentError:
            pass
    return simplify_expr(RationalExpr.coerce(num) / RationalExpr.coerce(den))


class Parser:
    def __init__(self, variables: Mapping[str, Variable], complex_mode: bool = False):
        self.variables = dict(variables)
        self.complex_mode = complex_mode

    def parse(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        if self._peek().kind == "end":
            raise ParseError("empty expression", text, 0)
        out = self._expr()
        tok = self._peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.value!r}", text, tok.pos)
        return out

    # helpers --------------------------------------------------------------
    def _peek(self) -> _Tok:
        return self.toks[self.i]

    def _next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _expect(self, value: str) -> _Tok:
        tok = self._next()
        if tok.value != value or tok.kind not in ("op", "ident"):
            found = tok.value or "end of input"
            raise ParseError(f"expected {value!r}, found {found!r}", self.text, tok.pos)
        return tok

    def _error(self, message: str, tok: _Tok):
        raise ParseError(message, self.text, tok.pos)

    # grammar ----------------------------------------------------------------
    def _expr(self):
        out = self._term()
        while self._peek().kind == "op" and self._peek().value in "+-":
            op = self._next().value
            rhs = self._term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def _term(self):
        out = self._unary()
        while self._peek().kind == "op" and self._peek().value in "*/":
            tok = self._next()
            rhs = self._unary()
            out = out * rhs if tok.value == "*" else _divide(out, rhs, self.text, tok.pos)
        return out

    def _unary(self):
        if self._peek().kind == "op" and self._peek().value == "-":
            self._next()
            return -self._unary()
        return self._power()

    def _power(self):
        start = self._peek()
        base = self._atom()
        if self._peek().kind == "op" and self._peek().value == "^":
            self._next()
            negative = False
            if self._peek().kind == "op" and self._peek().value == "-":
                self._next()
                negative = True
            tok = self._next()
            if tok.kind != "int":
                self._error("exponent must be an integer literal", tok)
            n = int(tok.value)
            if not negative:
                return base ** n
            if _is_scalar(base):
                c = base.constant_term()
                if not c:
                    self._error("zero to a negative power", tok)
                return Polynomial.const(c ** -n)
            try:
                return base ** -n
            except LaurentError:
                if isinstance(base, Polynomial):
                    return simplify_expr(RationalExpr(1, base ** n))
                self._error("negative power of a non-parameter expression", start)
        return base

    def _atom(self):
        tok = self._next()
        if tok.kind == "int":
            return Polynomial.const(int(tok.value))
        if tok.kind == "op" and tok.value == "(":
            out = self._expr()
            self._expect(")")
            return out
        if tok.kind == "ident":
            name = tok.value
            if name == "conj" and self._peek().value == "(":
                self._next()
                inner = self._next()
                if inner.kind != "ident":
                    self._error("conj expects a variable name", inner)
                self._expect(")")
                full = f"conj({inner.value})"
                if full in self.variables:
                    return Polynomial.var(self.variables[full])
                v = self.variables.get(inner.value)
                if v is None:
                    self._error(f"unknown variable {inner.value!r}", inner)
                return Polynomial.var(v.conj())
            if name in self.variables:
                return Polynomial.var(self.variables[name])
            if name == "i" and self.complex_mode:
                return Polynomial.const(I)
            self._error(f"unknown variable {name!r}", tok)
        if tok.kind == "end":
            self._error("unexpected end of input", tok)
        self._error(f"unexpected {tok.value!r}", tok)


def parse_expr(text: str, variables: Mapping[str, Variable] | list[Variable],
               complex_mode: bool = False):
    if not isinstance(variables, Mapping):
        variables = {v.name: v for v in variables}
    return Parser(variables, complex_mode).parse(text)
