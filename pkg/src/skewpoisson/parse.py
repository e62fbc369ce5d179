"""Parsing and printing of polynomial expressions.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' factor) | factor-starting-with-a-name)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

Variable names are either ``x1 .. x<n>`` or a caller-supplied list (for
instance generator names like ``f1``/``h4``); unknown identifiers are
rejected.  A factor immediately followed by a name multiplies it, so the
compact forms ``1/2f1``, ``2h1h2`` and ``1/2f1^2f2`` all parse the way they
are meant; every other juxtaposition is a syntax error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .poly import Polynomial, format_poly

__all__ = ["PolyParseError", "parse_poly", "format_poly", "DEFAULT_DEGREE_CAP"]

DEFAULT_DEGREE_CAP = 64

_NUMBER = "number"
_NAME = "name"
_OP = "op"
_END = "end"


class PolyParseError(ValueError):
    """Syntax error with a 1-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"position {position}: {message}")
        self.position = position


def _tokenize(text: str, names: Sequence[str]):
    by_first: dict = {}
    for idx, name in enumerate(names):
        by_first.setdefault(name[0], []).append((name, idx))
    for bucket in by_first.values():
        bucket.sort(key=lambda pair: len(pair[0]), reverse=True)

    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append((_NUMBER, int(text[i:j]), i + 1))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((_OP, ch, i + 1))
            i += 1
            continue
        matched = None
        for name, idx in by_first.get(ch, ()):
            if text.startswith(name, i):
                matched = (name, idx)
                break
        if matched is None:
            raise PolyParseError(f"unknown symbol {ch!r}", i + 1)
        tokens.append((_NAME, matched[1], i + 1))
        i += len(matched[0])
    tokens.append((_END, None, n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens, nvars: int, degree_cap: int):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        self.degree_cap = degree_cap

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != _OP or value != op:
            raise PolyParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse_expr(self) -> Polynomial:
        sign = 1
        kind, value, _ = self.peek()
        if kind == _OP and value in "+-":
            self.advance()
            sign = -1 if value == "-" else 1
        total = self.parse_term() * sign
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value in "+-":
                self.advance()
                term = self.parse_term()
                total = total + term if value == "+" else total - term
            else:
                break
        return total

    def parse_term(self) -> Polynomial:
        product = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value == "*":
                self.advance()
                product = product * self.parse_factor()
            elif kind == _NAME:
                # compact juxtaposition: a factor followed by a name multiplies
                product = product * self.parse_factor()
            else:
                break
        return product

    def parse_factor(self) -> Polynomial:
        base = self.parse_atom()
        kind, value, _ = self.peek()
        if kind == _OP and value == "^":
            self.advance()
            kind, value, pos = self.advance()
            if kind != _NUMBER:
                raise PolyParseError("expected an integer exponent after '^'", pos)
            if value > self.degree_cap:
                raise PolyParseError(
                    f"exponent {value} exceeds the degree cap {self.degree_cap}", pos
                )
            base = base**value
        return base

    def parse_atom(self) -> Polynomial:
        kind, value, pos = self.advance()
        if kind == _NUMBER:
            scalar = Fraction(value)
            kind2, value2, _ = self.peek()
            if kind2 == _OP and value2 == "/":
                self.advance()
                kind3, value3, pos3 = self.advance()
                if kind3 != _NUMBER:
                    raise PolyParseError("expected an integer denominator", pos3)
                if value3 == 0:
                    raise PolyParseError("zero denominator", pos3)
                scalar = Fraction(value, value3)
            return Polynomial.constant(self.nvars, scalar)
        if kind == _NAME:
            return Polynomial.variable(self.nvars, value)
        if kind == _OP and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise PolyParseError("expected a number, a name or '('", pos)


def parse_poly(
    text: str,
    nvars: Optional[int] = None,
    names: Optional[Sequence[str]] = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> Polynomial:
    """Parse an expression into a canonical :class:`Polynomial`.

    Exactly one of ``nvars`` (variables ``x1 .. x<nvars>``) or ``names``
    (explicit variable names, defining ``nvars`` by their count) selects the
    variable alphabet.  Exponents larger than ``degree_cap`` are rejected.
    """
    if names is None:
        if nvars is None:
            raise ValueError("parse_poly needs nvars or an explicit name list")
        names = [f"x{i + 1}" for i in range(nvars)]
    else:
        names = list(names)
        if nvars is not None and nvars != len(names):
            raise ValueError("nvars disagrees with the number of names")
        if len(names) == 0:
            raise ValueError("the variable name list must not be empty")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
    text = text.replace("−", "-")
    parser = _Parser(_tokenize(text, names), len(names), degree_cap)
    result = parser.parse_expr()
    kind, _, pos = parser.peek()
    if kind != _END:
        raise PolyParseError("unexpected trailing input", pos)
    return result
