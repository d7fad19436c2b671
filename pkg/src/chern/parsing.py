"""Tokenizer and polynomial-expression parser shared by the script language.

Polynomial syntax: variables ``[A-Za-z][A-Za-z0-9_]*``, integer literals,
``+ - * / ^`` and parentheses.  ``*`` may be omitted before a variable or a
parenthesis (``3x^2``, ``2(x+y)``).  Division is allowed only by nonzero
constants, which is how rational coefficients such as ``3/2*x`` are written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, SemanticError

RESERVED_NAMES = frozenset({"@t"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<flag>--[A-Za-z][A-Za-z0-9_-]*)
  | (?P<int>[0-9]+)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<reserved>@[A-Za-z0-9_]*)
  | (?P<op>[-+*/^()\[\],;=|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # int | name | flag | op | eof
    text: str
    line: int
    col: int


def tokenize(text: str):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "reserved":
            raise SemanticError(f"name {tok!r} is reserved", line, col)
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self, k=0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        t = self.peek()
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, kind, text=None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def accept(self, kind, text=None):
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind, text=None, what=None) -> Token:
        t = self.peek()
        if t.kind == kind and (text is None or t.text == text):
            return self.next()
        label = what or (repr(text) if text else kind)
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", t.line, t.col, expected=[label])


class PolyParser:
    """Recursive-descent parser producing :class:`~chern.poly.Polynomial` values."""

    def __init__(self, stream: TokenStream, ring):
        self.s = stream
        self.ring = ring

    def expr(self):
        s = self.s
        if s.accept("op", "-"):
            result = -self.term()
        else:
            s.accept("op", "+")
            result = self.term()
        while True:
            if s.accept("op", "+"):
                result = result + self.term()
            elif s.accept("op", "-"):
                result = result - self.term()
            else:
                return result

    def term(self):
        s = self.s
        result = self.power()
        while True:
            if s.accept("op", "*"):
                result = result * self.power()
            elif s.at("op", "/"):
                t = s.next()
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    raise ParseError("division only by nonzero constants", t.line, t.col)
                c = d.coefficient((0,) * self.ring.nvars)
                result = result.scale(self.ring.field.inv(c))
            elif s.at("name") or s.at("op", "("):
                result = result * self.power()
            else:
                return result

    def power(self):
        base = self.atom()
        if self.s.accept("op", "^"):
            t = self.s.expect("int", what="integer exponent")
            base = base ** int(t.text)
        return base

    def atom(self):
        s = self.s
        t = s.peek()
        if t.kind == "int":
            s.next()
            return self.ring.constant(int(t.text))
        if t.kind == "name":
            s.next()
            try:
                return self.ring.var(t.text)
            except KeyError:
                raise SemanticError(f"unknown variable {t.text!r}", t.line, t.col) from None
        if s.accept("op", "("):
            inner = self.expr()
            s.expect("op", ")")
            return inner
        if s.at("op", "-"):
            s.next()
            return -self.power()
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col,
                         expected=["number", "variable", "'('"])


def parse_polynomial(text: str, ring):
    s = TokenStream(tokenize(text))
    f = PolyParser(s, ring).expr()
    s.expect("eof", what="end of input")
    return f


def parse_polynomial_list(text: str, ring):
    """Comma-separated polynomials, optionally wrapped in parentheses."""
    s = TokenStream(tokenize(text))
    wrapped = bool(s.accept("op", "("))
    out = []
    if not (wrapped and s.at("op", ")")):
        out.append(PolyParser(s, ring).expr())
        while s.accept("op", ","):
            out.append(PolyParser(s, ring).expr())
    if wrapped:
        s.expect("op", ")")
    s.expect("eof", what="end of input")
    return out
