"""Recursive-descent parser and printer for the polynomial text format.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | 'i' | VAR | '(' expr ')'
    VAR    := ('X' | 'z') INT        -- 1-based index

Multiplication is always explicit.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .gaussian import GaussianRational, I
from .poly import Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[Xz]\d+)|(?P<i>i(?![A-Za-z0-9_]))|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", end))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.tokens = _tokenize(text)
        self.k = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.unary()
            else:
                return p

    def unary(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            return base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        n = self.nvars
        if kind == "int":
            num = int(val)
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dpos = self.take()
                if dk != "int":
                    raise ParseError("denominator must be an integer literal", dpos)
                if int(dv) == 0:
                    raise ParseError("zero denominator", dpos)
                return Polynomial.constant(n, Fraction(num, int(dv)))
            return Polynomial.constant(n, num)
        if kind == "i":
            return Polynomial.constant(n, I)
        if kind == "var":
            index = int(val[1:])
            if not 1 <= index <= n:
                raise ParseError(f"variable {val} out of range for nvars={n}", pos)
            return Polynomial.var(n, index - 1)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def poly_parse(text: str, nvars: int) -> Polynomial:
    if nvars < 1:
        raise ValueError("nvars must be positive")
    return _Parser(text, nvars).parse()


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial(exps, var="X") -> str:
    parts = []
    for j, e in enumerate(exps):
        if e == 1:
            parts.append(f"{var}{j + 1}")
        elif e > 1:
            parts.append(f"{var}{j + 1}^{e}")
    return "*".join(parts)


def _signed_coefficient(c: GaussianRational):
    """Split ``c`` into a sign and an unsigned printable magnitude ('' for unit)."""
    if not c.im:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        return sign, "" if mag == 1 else _fmt(mag), mag == 1
    if not c.re:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{_fmt(mag)}*i", False
    im = f"{'+' if c.im > 0 else '-'}{'' if abs(c.im) == 1 else _fmt(abs(c.im)) + '*'}i"
    return "+", f"({_fmt(c.re)}{im})", False


def poly_print(p: Polynomial, var: str = "X") -> str:
    """Canonical text for ``p``; terms in graded-lexicographic order."""
    if not p.terms:
        return "0"
    out = []
    for exps, c in p.sorted_terms():
        sign, coef, unit = _signed_coefficient(c)
        mono = _monomial(exps, var)
        if not mono:
            body = coef if coef else "1"
        elif unit:
            body = mono
        else:
            body = f"{coef}*{mono}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
