"""Parser for the polynomial text syntax used on the command line.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/')? unary)*       (juxtaposition multiplies)
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | VARIABLE | '(' expr ')'

Variables are ``x<i>`` and ``y<j>``; numbers are integers or ``p/q`` via the
division operator (only division by a nonzero constant is allowed).
Variables are laid out as the x-block followed by the y-block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polyring import Form, joint_names

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(\*\*|[-+*/^()]))")

# polynomial during parsing: {((block, index, exponent), ...): coefficient}
_Poly = dict


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class ParsedExpression:
    source: str
    form: Form
    x_vars: int
    y_vars: int

    @property
    def x_indices(self) -> range:
        return range(0, self.x_vars)

    @property
    def y_indices(self) -> range:
        return range(self.x_vars, self.x_vars + self.y_vars)

    @property
    def names(self) -> list[str]:
        return joint_names(self.x_vars, self.y_vars)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("var", (m.group(2), int(m.group(3))), start))
        else:
            op = m.group(4)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _mul(a: _Poly, b: _Poly) -> _Poly:
    out: _Poly = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            merged = dict(((blk, i), e) for blk, i, e in ka)
            for blk, i, e in kb:
                merged[(blk, i)] = merged.get((blk, i), 0) + e
            key = tuple(sorted((blk, i, e) for (blk, i), e in merged.items()))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _add(a: _Poly, b: _Poly, sign: int = 1) -> _Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos, self.text)

    def parse(self) -> _Poly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        result = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", pos, self.text)
        return result

    def expr(self) -> _Poly:
        result = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            result = _add(result, self.term(), 1 if op == "+" else -1)
        return result

    def term(self) -> _Poly:
        result = self.unary()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "*/":
                op = self.take()[1]
                rhs = self.unary()
            elif kind in ("num", "var") or (kind == "op" and value == "("):
                op = "*"
                rhs = self.power()
            else:
                break
            if op == "*":
                result = _mul(result, rhs)
            else:
                if set(rhs) - {()} or not rhs:
                    raise ParseError("division only by a nonzero constant", pos, self.text)
                inv = 1 / Fraction(rhs[()])
                result = {k: v * inv for k, v in result.items()}
        return result

    def unary(self) -> _Poly:
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            inner = self.unary()
            return inner if value == "+" else {k: -v for k, v in inner.items()}
        return self.power()

    def power(self) -> _Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos, self.text)
            result: _Poly = {(): Fraction(1)}
            for _ in range(value):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> _Poly:
        kind, value, pos = self.take()
        if kind == "num":
            return {(): Fraction(value)} if value else {}
        if kind == "var":
            block, index = value
            return {((block, index, 1),): Fraction(1)}
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {value!r}", pos, self.text)


def parse_form(
    text: str,
    expected_degree: int | None = None,
    x_vars: int | None = None,
    y_vars: int | None = None,
) -> ParsedExpression:
    """Parse ``text`` into a homogeneous :class:`Form`.

    Block sizes default to one more than the largest index seen in each
    block; pass ``x_vars``/``y_vars`` to fix them (e.g. when unused trailing
    variables matter).  ``"0"`` parses only when ``expected_degree`` is given.
    """
    poly = _Parser(text).parse()
    max_x = max((i for key in poly for blk, i, _ in key if blk == "x"), default=-1)
    max_y = max((i for key in poly for blk, i, _ in key if blk == "y"), default=-1)
    nx = max_x + 1 if x_vars is None else x_vars
    ny = max_y + 1 if y_vars is None else y_vars
    if max_x >= nx or max_y >= ny:
        raise ParseError("variable index exceeds the declared block size", 0, text)
    if nx + ny == 0:
        nx = 1
    degrees = {sum(e for _, _, e in key) for key in poly}
    if len(degrees) > 1:
        raise ParseError(f"inhomogeneous expression (degrees {sorted(degrees)})", 0, text)
    if not degrees:
        if expected_degree is None:
            raise ParseError("zero polynomial needs an expected degree", 0, text)
        degree = expected_degree
    else:
        degree = degrees.pop()
    if expected_degree is not None and degree != expected_degree:
        raise ParseError(f"degree {degree} does not match expected degree {expected_degree}", 0, text)
    terms = {}
    for key, c in poly.items():
        mono = [0] * (nx + ny)
        for blk, i, e in key:
            mono[i if blk == "x" else nx + i] += e
        terms[tuple(mono)] = c
    return ParsedExpression(text, Form(nx + ny, degree, terms), nx, ny)
