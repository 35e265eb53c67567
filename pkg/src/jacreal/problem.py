"""Text format for transfer matrices and state-space payloads.

A problem file looks like::

    field gf 5
    rows 2
    cols 2
    T[1][1] = (2*s^6+3*s^3+2*s^2+s+4)/((s^2+s+2)^2*(s^3+3*s^2+s+1))
    T[2][2] = 1/(s+1)

Unlisted entries are zero and indices are 1-based.  Beyond the core
grammar the reader also accepts ``#`` comments, blank lines, a leading
unary minus, ``A[i][j]`` as a synonym for ``T[i][j]``, an optional
``problem <kind>`` line, and a realization payload for ``verify``::

    states 2
    F[1][2] = 1
    G[2][1] = 1
    H[1][1] = 1

Integer literals over ``gf p`` are reduced modulo ``p``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParseError, UsageError
from .field import GF, QQ, Field
from .poly import Poly, format_poly
from .ratfun import RatFun, RatMatrix

KINDS = ("realize", "jnf", "smf", "verify")

_TOKEN = re.compile(r"\s*(?:(\d+)|(s)|([()+\-*^/]))")


@dataclass
class ProblemFile:
    field: Field
    rows: int
    cols: int
    matrix: RatMatrix
    kind: str | None = None
    states: int | None = None
    F: np.ndarray | None = None
    G: np.ndarray | None = None
    H: np.ndarray | None = None

    def scalar_matrix(self) -> np.ndarray:
        """The payload as a constant matrix (for ``jnf``)."""
        out = self.field.zeros(self.rows, self.cols)
        for i, row in enumerate(self.matrix.entries):
            for j, x in enumerate(row):
                if not x.is_polynomial() or x.num.degree > 0:
                    raise UsageError(f"entry ({i + 1},{j + 1}) = {x} is not a constant")
                out[i, j] = x.num.coeff(0)
        return out


class _ExprParser:
    # recursive descent over one right-hand side

    def __init__(self, text: str, field: Field, line: int, offset: int):
        self.field = field
        self.line = line
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                col = offset + pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, col)
            col = offset + m.start(m.lastindex) + 1
            self.tokens.append((m.group(m.lastindex), m.lastindex, col))
            pos = m.end()
        self.i = 0
        self.end_col = offset + len(text) + 1

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def col(self):
        return self.tokens[self.i][2] if self.i < len(self.tokens) else self.end_col

    def take(self, expected=None):
        if self.i >= len(self.tokens):
            raise ParseError(f"unexpected end of expression (expected {expected or 'more input'})", self.line, self.col())
        tok = self.tokens[self.i]
        if expected is not None and tok[0] != expected:
            raise ParseError(f"expected {expected!r}, found {tok[0]!r}", self.line, tok[2])
        self.i += 1
        return tok

    def ratexpr(self) -> RatFun:
        num = self.polyexpr()
        den = Poly.one(self.field)
        if self.peek() == "/":
            col = self.col()
            self.take("/")
            den = self.polyexpr()
            if den.is_zero():
                raise ParseError("division by zero", self.line, col)
        if self.i != len(self.tokens):
            raise ParseError(f"unexpected {self.peek()!r}", self.line, self.col())
        return RatFun(num, den)

    def polyexpr(self) -> Poly:
        negate = False
        if self.peek() == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.base()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok[1] != 1:
                raise ParseError(f"exponent must be an integer, found {tok[0]!r}", self.line, tok[2])
            base = base ** int(tok[0])
        return base

    def base(self) -> Poly:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of expression", self.line, self.col())
        text, kind, col = self.tokens[self.i]
        if kind == 1:
            self.i += 1
            return Poly.constant(self.field, int(text))
        if kind == 2:
            self.i += 1
            return Poly.s(self.field)
        if text == "(":
            self.i += 1
            inner = self.polyexpr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {text!r}", self.line, col)


def parse_expr(text: str, field: Field) -> RatFun:
    """Parse a single rational expression in ``s``."""
    return _ExprParser(text, field, line=1, offset=0).ratexpr()


_ENTRY = re.compile(r"\s*([TAFGH])\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]\s*=")


def parse_problem(data: bytes | str) -> ProblemFile:
    """Parse a problem file into exact matrices."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    lines = []
    for n, raw in enumerate(data.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((n, body))
    if not lines:
        raise ParseError("empty problem file")

    idx = 0

    def header(keyword):
        nonlocal idx
        if idx >= len(lines):
            raise ParseError(f"missing '{keyword}' line")
        n, body = lines[idx]
        words = body.split()
        if not words or words[0] != keyword:
            raise ParseError(f"expected '{keyword}'", n, body.find(words[0]) + 1 if words else 1)
        idx += 1
        return n, words[1:]

    n, args = header("field")
    if args == ["q"]:
        field = QQ
    elif len(args) == 2 and args[0] == "gf" and args[1].isdigit():
        try:
            field = GF(int(args[1]))
        except UsageError as exc:
            raise ParseError(str(exc), n) from None
    else:
        raise ParseError("field must be 'gf <prime>' or 'q'", n)
    sizes = {}
    for key in ("rows", "cols"):
        n, args = header(key)
        if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
            raise ParseError(f"'{key}' needs a positive integer", n)
        sizes[key] = int(args[0])
    rows, cols = sizes["rows"], sizes["cols"]

    kind = None
    states = None
    seen = {}
    values = {"T": {}, "F": {}, "G": {}, "H": {}}
    for n, body in lines[idx:]:
        words = body.split()
        if words[0] == "problem":
            if len(words) != 2 or words[1] not in KINDS:
                raise ParseError(f"problem kind must be one of {', '.join(KINDS)}", n)
            kind = words[1]
            continue
        if words[0] == "states":
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError("'states' needs a non-negative integer", n)
            states = int(words[1])
            continue
        m = _ENTRY.match(body)
        if not m:
            raise ParseError("expected an entry 'T[i][j] = expr'", n, len(body) - len(body.lstrip()) + 1)
        name = "T" if m.group(1) == "A" else m.group(1)
        i, j = int(m.group(2)), int(m.group(3))
        if name == "T":
            limits = (rows, cols)
        else:
            if states is None:
                raise ParseError(f"'{name}' entries need a preceding 'states' line", n, m.start(1) + 1)
            limits = {"F": (states, states), "G": (states, cols), "H": (rows, states)}[name]
        if not (1 <= i <= limits[0] and 1 <= j <= limits[1]):
            raise ParseError(f"index {name}[{i}][{j}] out of range {limits[0]}x{limits[1]}", n, m.start(2) + 1)
        if (name, i, j) in seen:
            raise ParseError(f"duplicate entry {name}[{i}][{j}] (first given on line {seen[name, i, j]})", n, m.start(1) + 1)
        seen[name, i, j] = n
        value = _ExprParser(body[m.end():], field, n, m.end()).ratexpr()
        if name != "T":
            if not value.is_polynomial() or value.num.degree > 0:
                raise ParseError(f"{name}[{i}][{j}] must be a constant", n, m.end() + 1)
            value = value.num.coeff(0)
        values[name][i - 1, j - 1] = value

    mat = RatMatrix.zeros(field, rows, cols)
    for (i, j), v in values["T"].items():
        mat.entries[i][j] = v
    problem = ProblemFile(field=field, rows=rows, cols=cols, matrix=mat, kind=kind, states=states)
    if states is not None:
        shapes = {"F": (states, states), "G": (states, cols), "H": (rows, states)}
        for name, shape in shapes.items():
            arr = field.zeros(*shape)
            for (i, j), v in values[name].items():
                arr[i, j] = v
            setattr(problem, name, arr)
    return problem


def _integral_scale(r: RatFun) -> tuple[Poly, Poly]:
    if r.field.is_prime_field:
        return r.num, r.den
    den = 1
    for c in r.num.coeffs + r.den.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return r.num.scale(Fraction(den)), r.den.scale(Fraction(den))


def format_expr(r: RatFun) -> str:
    """Render ``r`` so that :func:`parse_expr` reads it back unchanged."""
    num, den = _integral_scale(r)
    n = format_poly(num)
    if den.is_one():
        return n
    d = format_poly(den)
    if sum(1 for c in num.coeffs if c) > 1:
        n = f"({n})"
    if any(op in d for op in "+-*"):
        d = f"({d})"
    return f"{n}/{d}"


def format_problem(T: RatMatrix, kind: str | None = None) -> str:
    """Serialise a rational matrix as a problem file."""
    f = T.field
    head = f"field gf {f.modulus}" if f.is_prime_field else "field q"
    out = [head, f"rows {T.rows}", f"cols {T.cols}"]
    if kind:
        out.append(f"problem {kind}")
    for i, row in enumerate(T.entries, start=1):
        for j, x in enumerate(row, start=1):
            if x:
                out.append(f"T[{i}][{j}] = {format_expr(x)}")
    return "\n".join(out) + "\n"
