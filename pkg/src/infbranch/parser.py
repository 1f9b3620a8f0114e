"""Recursive-descent parser for polynomial text in ``x`` and ``y``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | NUMBER '/' NUMBER | 'x' | 'y' | '(' expr ')'

Implicit multiplication is rejected. Exponents must evaluate to nonnegative
integer constants; ``^`` is right-associative.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .polynomial import BivariatePolynomial

_TOKEN = re.compile(r"\s*(?:(\d+/\d+)|(\d+)|([A-Za-z_]\w*)|(\S))")
VARIABLES = ("x", "y")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        rational, integer, ident, sym = m.groups()
        if rational is not None:
            num, den = rational.split("/")
            if int(den) == 0:
                raise ParseError("division by zero in rational literal", start)
            tokens.append(("num", Fraction(int(num), int(den)), start))
        elif integer is not None:
            tokens.append(("num", Fraction(int(integer)), start))
        elif ident is not None:
            if ident not in VARIABLES:
                raise ParseError(f"unknown identifier {ident!r}", start)
            tokens.append(("var", ident, start))
        else:
            if sym not in "+-*^()":
                raise ParseError(f"unexpected character {sym!r}", start)
            tokens.append((sym, sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {expected}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        kind = self.peek()[0]
        if kind in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if kind == "+" else -inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exp_pos = self.peek()[2]
            exponent = self.unary()
            if not exponent.is_constant():
                raise ParseError("exponent must be a constant", exp_pos)
            e = exponent.coefficient(0, 0)
            if e.denominator != 1:
                raise ParseError("fractional exponent", exp_pos)
            if e < 0:
                raise ParseError("negative exponent", exp_pos)
            return base ** int(e)
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return BivariatePolynomial.constant(value)
        if kind == "var":
            self.take()
            return BivariatePolynomial.variable(VARIABLES.index(value))
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_polynomial(text: str) -> BivariatePolynomial:
    """Parse and expand polynomial text into canonical sparse form.

    >>> parse_polynomial("(y-x)*(y+x)").to_text()
    'y^2 - x^2'
    """
    p = _Parser(text)
    value = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        if tok[0] in ("num", "var", "("):
            raise ParseError("implicit multiplication is not allowed", tok[2])
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
    return value
