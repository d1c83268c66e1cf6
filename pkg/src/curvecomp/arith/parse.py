"""Exact parser for polynomial text such as ``"x1^2 + x2^2 - 1"``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*        (juxtaposition is not allowed)
    factor := ("+" | "-") factor | power
    power  := atom ("^" integer)?
    atom   := integer ("/" integer)? | "x" index | "(" expr ")"
"""
from __future__ import annotations

import re

from .mpoly import MPoly
from .rational import Q

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            idx = int(var[1:])
            if idx < 1:
                raise ParseError("variables are numbered from x1")
            out.append(("var", idx))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, nvars):
        self.t = tokens
        self.i = 0
        self.n = nvars

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        if self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            val = self.factor()
            return val if op == "+" else -val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "num" or den == 0:
                    raise ParseError("bad rational literal")
                return MPoly.const(self.n, Q(val, den))
            return MPoly.const(self.n, val)
        if kind == "var":
            if val > self.n:
                raise ParseError(f"variable x{val} exceeds variable count {self.n}")
            return MPoly.var(self.n, val - 1)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("unexpected end of input" if kind is None else f"unexpected token {val!r}")


def max_var_index(text: str) -> int:
    return max((int(m) for m in re.findall(r"x(\d+)", text)), default=0)


def parse_poly(text: str, nvars: int | None = None) -> MPoly:
    """Parse one polynomial; ``nvars`` defaults to the largest index seen (at least 2)."""
    if nvars is None:
        nvars = max(2, max_var_index(text))
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    p = _Parser(tokens, nvars)
    out = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input at token {p.i}")
    return out


def parse_system(text: str, nvars: int | None = None):
    """One polynomial per non-empty line; ``#`` starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("no polynomials in input")
    if nvars is None:
        nvars = max(2, max(max_var_index(ln) for ln in lines))
    return [parse_poly(ln, nvars) for ln in lines]
