"""Recursive-descent parser for scalar expressions.

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "x" INT | "i" | "(" expr ")"

``-x1^2`` therefore means ``-(x1^2)``.  Rationals are written as quotients
of integers, e.g. ``3/2``.
"""
from __future__ import annotations

import re

from gmpy2 import mpq

from ..errors import ExpressionSyntaxError, UnknownVariable
from .field import ScalarField
from .gaussrat import coeff
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.lastindex is None):
            break
        start = m.start(m.lastindex)
        kind = ("int", "name", "op")[m.lastindex - 1]
        tok = m.group(m.lastindex)
        if kind == "op" and tok not in "+-*/^()":
            raise ExpressionSyntaxError(f"unexpected character {tok!r}", text, start)
        out.append((kind, tok, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ExpressionSyntaxError(msg, self.text, tok[2])

    def parse(self) -> ScalarField:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                v = v * rhs
            else:
                if rhs.is_zero():
                    raise ExpressionSyntaxError("division by zero", self.text, op[2])
                v = v / rhs
        return v

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in ("-", "+"):
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.peek()
            if t[0] != "int":
                self.fail("exponent must be a nonnegative integer")
            self.take()
            base = base ** int(t[1])
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.fail("chained exponents need parentheses")
        return base

    def atom(self):
        t = self.peek()
        kind, tok, off = t
        if kind == "int":
            self.take()
            return ScalarField.const(self.nvars, mpq(int(tok)))
        if kind == "name":
            self.take()
            if tok == "i":
                return ScalarField.const(self.nvars, coeff(0, 1))
            m = re.fullmatch(r"x(\d+)", tok)
            if m is None or not 1 <= int(m.group(1)) <= self.nvars:
                raise UnknownVariable(tok, self.nvars)
            return ScalarField._raw(Poly.var(self.nvars, int(m.group(1)) - 1), ())
        if kind == "op" and tok == "(":
            self.take()
            v = self.expr()
            if self.peek()[1] != ")" or self.peek()[0] != "op":
                self.fail("expected ')'")
            self.take()
            return v
        if kind == "end":
            self.fail("unexpected end of expression")
        self.fail(f"unexpected token {tok!r}")


def parse_expr(text: str, nvars: int) -> ScalarField:
    """Parse ``text`` into an exact ScalarField on an ``nvars``-dimensional chart."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return _Parser(text, nvars).parse()
