"""Recursive-descent parser for the polynomial expression grammar.

Grammar (whitespace insensitive):

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := primary ['^' ['-'] INT]
    primary := INT ['/' INT] | IDENT | '(' expr ')'

Identifiers are ``[a-zA-Z][a-zA-Z0-9_]*``.  ``^`` takes a signed integer;
a negative exponent is only legal on a unit (single-term) base.  Rational
literals are written ``p/q``.  An explicit ``*`` is required between factors.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .poly import LaurentSubstitutionError, Poly

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*/^()]))"
)


class PolyParseError(ValueError):
    """Syntax error; carries the 0-based position in the input text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UndeclaredVariableError(PolyParseError):
    def __init__(self, name: str, position: int):
        PolyParseError.__init__(self, f"undeclared variable {name!r}", position)
        self.name = name


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise PolyParseError(f"unexpected character {text[bad_at]!r}", bad_at)
        if m.group("int") is not None:
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Optional[Sequence[str]]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = None if variables is None else set(variables)

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}", pos)
        return self.next()

    def parse(self) -> Poly:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected token {val!r}", pos)
        return p

    def expr(self) -> Poly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        p = self.primary()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            exp = self.signed_int()
            try:
                p = p ** exp
            except LaurentSubstitutionError as e:
                raise PolyParseError(str(e), pos) from None
        return p

    def signed_int(self) -> int:
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            sign = -1
        kind, val, pos = self.peek()
        if kind != "int":
            raise PolyParseError("expected integer exponent", pos)
        self.next()
        return sign * int(val)

    def primary(self) -> Poly:
        kind, val, pos = self.next()
        if kind == "int":
            num = int(val)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.next()
                k3, v3, p3 = self.peek()
                if k3 != "int":
                    raise PolyParseError("expected integer denominator", p3)
                self.next()
                den = int(v3)
                if den == 0:
                    raise PolyParseError("zero denominator", p3)
                q = Fraction(num, den)
                return Poly.const(q.numerator if q.denominator == 1 else q)
            return Poly.const(num)
        if kind == "ident":
            if self.variables is not None and val not in self.variables:
                raise UndeclaredVariableError(val, pos)
            return Poly.variable(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise PolyParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)


def parse_poly(text: str, variables: Optional[Iterable[str]] = None) -> Poly:
    """Parse text into a Poly.

    With ``variables`` given, identifiers outside the list raise
    UndeclaredVariableError; without it any identifier is accepted.
    """
    vars_seq = None if variables is None else tuple(variables)
    return _Parser(text, vars_seq).parse()
