"""Text input: polynomial expressions and system files.

Expression grammar (``^`` and ``**`` both mean power)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | IDENT | '(' expr ')'

Identifiers must be declared either as variables or as parameters.  Division
is only allowed by expressions free of variables.

System file::

    # comment
    vars: x, y, z
    params: k1, k2        (optional)
    order: grevlex        (optional)
    k1*x - y
    ...
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polynomial import ORDERS, Polynomial, PolyRing, PolySystem, default_order
from .scalars import ParamPoly, RatFun, ScalarDivisionError

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class _Tok:
    kind: str
    value: str
    col: int


def _tokenize(text: str, line: int) -> list:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start + 1))
        elif m.group(2):
            toks.append(_Tok("ident", m.group(2), start + 1))
        else:
            toks.append(_Tok("op", m.group(3), start + 1))
        pos = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, ring: PolyRing, params: Sequence[str], line: int = 1):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.ring = ring
        self.vars = {v: k for k, v in enumerate(ring.variables)}
        self.params = set(params)
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().value!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek().kind == "op" and self.peek().value in ("*", "/"):
            tok = self.take()
            q = self.unary()
            if tok.value == "*":
                p = p * q
            else:
                if any(any(m) for m in q.terms):
                    self.error("division by an expression containing variables", tok)
                c = q.coeff(self.ring.one())
                if c == 0:
                    self.error("division by zero", tok)
                try:
                    p = p / c
                except ScalarDivisionError:
                    self.error("division by zero", tok)
        return p

    def unary(self) -> Polynomial:
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            p = self.unary()
            return -p if t.value == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        p = self.atom()
        t = self.peek()
        if t.kind == "op" and t.value in ("^", "**"):
            self.take()
            e = self.take()
            if e.kind != "int":
                self.error("exponent must be a non-negative integer", e)
            p = p ** int(e.value)
        return p

    def atom(self) -> Polynomial:
        t = self.take()
        if t.kind == "int":
            return self.ring.const(Fraction(int(t.value)))
        if t.kind == "ident":
            if t.value in self.vars:
                return self.ring.gen(t.value)
            if t.value in self.params:
                return self.ring.const(RatFun(ParamPoly.symbol(t.value)))
            self.error(f"undeclared identifier {t.value!r}", t)
        if t.kind == "op" and t.value == "(":
            p = self.expr()
            if self.peek().value != ")":
                self.error("expected ')'")
            self.take()
            return p
        self.error(f"unexpected {t.value or 'end of input'!r}", t)


def parse_polynomial(text: str, ring: PolyRing, params: Sequence[str] = (), line: int = 1) -> Polynomial:
    return _Parser(text, ring, params, line).parse()


def parse_scalar(text: str, params: Sequence[str] = ()):
    """Parse a coefficient expression in the given parameters."""
    ring = PolyRing(())
    return parse_polynomial(text, ring, params).coeff(())


def _split_names(s: str, line: int, col: int) -> list:
    names = [n.strip() for n in re.split(r"[,\s]+", s.strip()) if n.strip()]
    for n in names:
        if not IDENT_RE.fullmatch(n):
            raise ParseError(f"bad identifier {n!r}", line, col)
    return names


def parse_system(text: str, order: str | None = None) -> PolySystem:
    """Parse the line-oriented system format (see module docstring)."""
    variables = params = None
    file_order = None
    body = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*(vars|params|order)\s*:(.*)$", line)
        if m:
            key, rest = m.group(1), m.group(2)
            col = m.start(2) + 1
            if key == "vars":
                variables = _split_names(rest, lineno, col)
            elif key == "params":
                params = _split_names(rest, lineno, col)
            else:
                file_order = rest.strip()
                if file_order not in ORDERS:
                    raise ParseError(f"unknown monomial order {file_order!r}", lineno, col)
            continue
        body.append((lineno, line))
    if variables is None:
        raise ParseError("missing 'vars:' header", 1, 1)
    params = params or []
    clash = set(variables) & set(params)
    if clash:
        raise ParseError(f"names declared both as variable and parameter: {sorted(clash)}", 1, 1)
    ring = PolyRing(tuple(variables), order or file_order or default_order())
    gens = [parse_polynomial(line, ring, params, lineno) for lineno, line in body]
    return PolySystem(ring, tuple(params), tuple(gens))


def load_system(path, order: str | None = None) -> PolySystem:
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        data = json.loads(text)
        if order:
            data["order"] = order
        return PolySystem.from_json(data)
    return parse_system(text, order)
