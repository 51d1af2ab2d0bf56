"""Reader for exact coefficient expressions.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ("+" | "-") factor | atom ("^" integer)?
    atom   := integer | name | "(" expr ")"

Integers combine with ``/`` into exact rationals, so ``3/2*x1^2`` is a valid
coefficient string. Decimal points and exponents are rejected: the inputs are
meant to be bit-exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:[.eE][\d.eE+-]*)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int, line: int = 1, col_offset: int = 0):
        self.text = text
        self.pos = pos
        self.line = line
        self.column = pos + 1 + col_offset
        super().__init__(f"line {line}, column {self.column}: {message}")


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str, line: int, col_offset: int) -> list[_Tok]:
    out = []
    i = 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if not m:
            j = i + len(text[i:]) - len(text[i:].lstrip())
            raise ParseError(f"unexpected character {text[j]!r}", text, j, line, col_offset)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "num" and not value.isdigit():
            raise ParseError(f"floating-point literal {value!r} is not allowed; write p/q", text, start, line, col_offset)
        out.append(_Tok(kind, value, start))
        i = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, names, line, col_offset):
        self.text = text
        self.names = tuple(names)
        self.toks = _tokenize(text, line, col_offset)
        self.i = 0
        self.line = line
        self.col_offset = col_offset

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        return ParseError(msg, self.text, tok.pos, self.line, self.col_offset)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self) -> RatFunc:
        v = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().value!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek().value in ("+", "-") and self.peek().kind == "op":
            op = self.take().value
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek().kind == "op" and self.peek().value in ("*", "/"):
            tok = self.take()
            w = self.factor()
            if tok.value == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise self.error("division by zero", tok)
                v = v / w
        return v

    def factor(self):
        t = self.peek()
        if t.kind == "op" and t.value in ("+", "-"):
            self.take()
            v = self.factor()
            return -v if t.value == "-" else v
        v = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            e = self.take()
            if e.kind != "num":
                raise self.error("exponent must be a non-negative integer", e)
            v = v ** int(e.value)
        return v

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return RatFunc.const(self.names, int(t.value))
        if t.kind == "name":
            if t.value not in self.names:
                raise self.error(f"unknown coordinate {t.value!r}", t)
            return RatFunc.var(self.names, t.value)
        if t.kind == "op" and t.value == "(":
            v = self.expr()
            close = self.take()
            if close.value != ")":
                raise self.error("expected ')'", close)
            return v
        raise self.error("unexpected end of expression" if t.kind == "end" else f"unexpected {t.value!r}", t)


def parse_ratfunc(text: str, names: Sequence[str], *, line: int = 1, column: int = 1) -> RatFunc:
    """Parse ``text`` into a :class:`RatFunc` over the variables ``names``.

    ``line``/``column`` locate ``text`` inside a larger file for diagnostics.
    """
    return _Parser(text, names, line, column - 1).parse()
