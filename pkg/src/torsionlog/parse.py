"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insignificant, variables are x1..xn):

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | var | '(' expr ')'
    var      := 'x' index ('^' signed-integer)?
    rational := signed-integer ('/' positive-integer)?

The optional leading '-' on the first term is a convenience superset of the
grammar so that `-x1 + 1` parses.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PolynomialSyntaxError
from .lpoly import LPoly


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _line_col(self) -> tuple[int, int]:
        upto = self.text[: self.pos]
        line = upto.count("\n") + 1
        col = self.pos - (upto.rfind("\n") + 1) + 1
        return line, col

    def error(self, message: str):
        line, col = self._line_col()
        raise PolynomialSyntaxError(message, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            self.error(f"expected '{ch}'")

    def integer(self, signed: bool) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("expected integer")
        return int(self.text[start : self.pos])


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.s = _Scanner(text)
        self.nvars = nvars

    def parse(self) -> LPoly:
        poly = self.expr()
        self.s.skip_ws()
        if self.s.pos != len(self.s.text):
            self.s.error(f"unexpected input {self.s.text[self.s.pos]!r}")
        return poly

    def expr(self) -> LPoly:
        negate = self.s.take("-")
        poly = self.term()
        if negate:
            poly = -poly
        while True:
            if self.s.take("+"):
                poly = poly + self.term()
            elif self.s.take("-"):
                poly = poly - self.term()
            else:
                return poly

    def term(self) -> LPoly:
        poly = self.factor()
        while self.s.take("*"):
            poly = poly * self.factor()
        return poly

    def factor(self) -> LPoly:
        ch = self.s.peek()
        if ch == "(":
            self.s.expect("(")
            poly = self.expr()
            self.s.expect(")")
            return poly
        if ch == "x":
            return self.var()
        if ch.isdigit() or ch in "+-":
            return self.rational()
        self.s.error("expected rational, variable or '('")

    def var(self) -> LPoly:
        self.s.expect("x")
        # Index digits must follow immediately (no whitespace inside a name).
        if self.s.pos >= len(self.s.text) or not self.s.text[self.s.pos].isdigit():
            self.s.error("expected variable index after 'x'")
        start = self.s.pos
        while self.s.pos < len(self.s.text) and self.s.text[self.s.pos].isdigit():
            self.s.pos += 1
        index = int(self.s.text[start : self.s.pos])
        if not 1 <= index <= self.nvars:
            self.s.error(f"variable index {index} exceeds nvars={self.nvars}")
        power = 1
        if self.s.take("^"):
            power = self.s.integer(signed=True)
        return LPoly.variable(self.nvars, index - 1, power)

    def rational(self) -> LPoly:
        num = self.s.integer(signed=True)
        if self.s.take("/"):
            den = self.s.integer(signed=False)
            if den <= 0:
                self.s.error("denominator must be positive")
            return LPoly.constant(self.nvars, Fraction(num, den))
        return LPoly.constant(self.nvars, num)


def parse_poly(text: str, nvars: int) -> LPoly:
    """Parse an expression into a canonically normalized LPoly."""
    return _Parser(text, nvars).parse()
