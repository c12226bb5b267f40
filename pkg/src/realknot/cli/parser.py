"""Curve files: one ``xK:`` line per coordinate, polynomials in ``t`` and ``s``.

Example::

    # twisted cubic
    degree: 3
    x0: t^3
    x1: t^2*s
    x2: t*s^2
    x3: s^3

Coefficients are exact rationals (``-3/2*t*s``). Products, powers and
parentheses are allowed. With a ``degree:`` line, terms of lower degree are
homogenized by filling in powers of ``s``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..algebra.poly import HomPoly
from ..curve import RatCurve, primitivize

Terms = dict[tuple[int, int], Fraction]  # (power of t, power of s) -> coefficient


class CurveSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


_TOKEN = re.compile(r"\s*(?:(\d+)|([ts])|([-+*/^()]))")


def _tokens(text: str, line: int, offset: int):
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise CurveSyntaxError(f"unexpected {text[bad]!r}", line, offset + bad + 1)
        kind = "num" if m.group(1) else "var" if m.group(2) else "op"
        out.append((kind, m.group(m.lastindex), offset + m.start(m.lastindex) + 1))
        pos = m.end()
    out.append(("end", "", offset + len(text) + 1))
    return out


def _mul(p: Terms, q: Terms) -> Terms:
    out: Terms = {}
    for (a, b), c in p.items():
        for (x, y), d in q.items():
            k = (a + x, b + y)
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def _add(p: Terms, q: Terms, sign: int = 1) -> Terms:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


class _Parser:
    def __init__(self, tokens, line: int):
        self.toks = tokens
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, tok, what: str):
        shown = "end of line" if tok[0] == "end" else repr(tok[1])
        raise CurveSyntaxError(f"{what}, found {shown}", self.line, tok[2])

    def parse(self) -> Terms:
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(self.peek(), "expected an operator")
        return p

    def expr(self) -> Terms:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = 1 if self.take()[1] == "+" else -1
            p = _add(p, self.term(), sign)
        return p

    def term(self) -> Terms:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            if op == "*":
                p = _mul(p, self.unary())
            else:
                tok = self.peek()
                q = self.unary()
                if set(q) - {(0, 0)} or not q:
                    self.fail(tok, "can only divide by a nonzero number")
                p = {k: v / q[(0, 0)] for k, v in p.items()}
        return p

    def unary(self) -> Terms:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return p if tok[1] == "+" else {k: -v for k, v in p.items()}
        return self.power()

    def power(self) -> Terms:
        p = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail(tok, "expected an integer exponent")
            out: Terms = {(0, 0): Fraction(1)}
            for _ in range(int(tok[1])):
                out = _mul(out, p)
            p = out
        return p

    def atom(self) -> Terms:
        tok = self.take()
        if tok[0] == "num":
            return {(0, 0): Fraction(int(tok[1]))} if int(tok[1]) else {}
        if tok[0] == "var":
            return {(1, 0): Fraction(1)} if tok[1] == "t" else {(0, 1): Fraction(1)}
        if tok[1] == "(":
            p = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail(close, "expected ')'")
            return p
        self.fail(tok, "expected a number, t, s or '('")


def parse_expression(text: str, line: int = 1, offset: int = 0) -> Terms:
    return _Parser(_tokens(text, line, offset), line).parse()


_HEADER = re.compile(r"\s*(x[0-3]|degree)\s*:")


def parse_curve(text: str) -> RatCurve:
    """Parse a curve file; the result is primitivized."""
    exprs: dict[int, tuple[Terms, int]] = {}
    degree = None
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip("\r")
        if not body.strip():
            continue
        m = _HEADER.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise CurveSyntaxError("expected 'x0:' .. 'x3:' or 'degree:'", n, col)
        key, rest, off = m.group(1), body[m.end():], m.end()
        if key == "degree":
            val = rest.strip()
            if not val.isdigit() or int(val) < 1:
                raise CurveSyntaxError("degree must be a positive integer", n, off + 1)
            degree = int(val)
            continue
        k = int(key[1])
        if k in exprs:
            raise CurveSyntaxError(f"coordinate x{k} given twice", n, m.start(1) + 1)
        exprs[k] = (parse_expression(rest, n, off), n)
    missing = [f"x{k}" for k in range(4) if k not in exprs]
    if missing:
        raise CurveSyntaxError(f"missing coordinate(s) {', '.join(missing)}", len(text.splitlines()) + 1, 1)
    return primitivize(_homogenize(exprs, degree))


def _homogenize(exprs: dict[int, tuple[Terms, int]], degree: int | None) -> list[HomPoly]:
    declared = degree is not None
    if not declared:
        degs = {a + b for terms, _ in exprs.values() for a, b in terms}
        if not degs:
            raise CurveSyntaxError("all coordinates are zero", 1, 1)
        degree = max(degs)
    out = []
    for k in range(4):
        terms, n = exprs[k]
        full: Terms = {}
        for (a, b), c in terms.items():
            if a + b > degree:
                raise CurveSyntaxError(f"x{k} has a term of degree {a + b} > {degree}", n, 1)
            if a + b < degree and not declared:
                raise CurveSyntaxError(f"x{k} is not homogeneous of degree {degree} (declare 'degree:' to fill in s)", n, 1)
            full[(a, degree - a)] = full.get((a, degree - a), 0) + c
        out.append(HomPoly.from_terms(degree, full))
    if all(p.is_zero() for p in out):
        raise CurveSyntaxError("all coordinates are zero", 1, 1)
    return out


def serialize(C: RatCurve, comment: str | None = None) -> str:
    """Text that :func:`parse_curve` reads back to ``C`` exactly."""
    lines = [f"# {comment}"] if comment else []
    lines.append(f"degree: {C.degree}")
    lines += [f"x{k}: {p}" for k, p in enumerate(C.coords)]
    return "\n".join(lines) + "\n"
