"""Polynomial text format.

::

    field: QQ(w)
    vars: U0 .. U9
    -17/64*U0^2 + U1*U4 + (-1+w)/8*U1*U7
    ...

``w`` denotes a square root of -7 in ``QQ(w)`` and ``z`` a primitive 7th
root of unity in ``QQ(z7)``.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .fields import QQ, Field, QuadraticField, CyclotomicField, field_from_tag
from .poly import MultiPoly


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(){}]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", col=pos + 1)
        if m.group(1):
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("id", m.group(2), m.start(2)))
        else:
            op = m.group(3)
            op = {"**": "^", "{": "(", "}": ")"}.get(op, op)
            toks.append(("op", op, m.start(3)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, vars: Sequence[str], field: Field):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)
        self.field = field
        self.index = {v: k for k, v in enumerate(self.vars)}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, op=None):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        if op is not None and not (t[0] == "op" and t[1] == op):
            raise ParseError(f"expected {op!r}", col=t[2] + 1)
        self.i += 1
        return t

    def const(self, c):
        return MultiPoly.constant(self.vars, self.field(c), self.field)

    def parse(self) -> MultiPoly:
        if not self.toks:
            raise ParseError("empty polynomial")
        e = self.expr()
        if self.peek() is not None:
            raise ParseError("trailing input", col=self.peek()[2] + 1)
        return e

    def expr(self):
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            left = self.term()
            if t[1] == "-":
                left = -left
        else:
            left = self.term()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.take()
                right = self.term()
                left = left + right if t[1] == "+" else left - right
            else:
                return left

    def _starts_atom(self, t):
        return t is not None and (t[0] in ("num", "id") or (t[0] == "op" and t[1] == "("))

    def term(self):
        left = self.power()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] == "*":
                self.take()
                left = left * self.power()
            elif t and t[0] == "op" and t[1] == "/":
                self.take()
                d = self.power()
                if d.degree() > 0:
                    raise ParseError("division by a non-constant", col=t[2] + 1)
                if d.is_zero():
                    raise ParseError("division by zero", col=t[2] + 1)
                c = d.coefficient((0,) * len(self.vars))
                left = left.scale(self.field.inv(c))
            elif self._starts_atom(t):
                left = left * self.power()
            else:
                return left

    def power(self):
        base = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            sign = 1
            t2 = self.peek()
            paren = False
            if t2 and t2[0] == "op" and t2[1] == "(":
                self.take()
                paren = True
                t2 = self.peek()
            if t2 and t2[0] == "op" and t2[1] == "-":
                self.take()
                sign = -1
            n = self.take()
            if n[0] != "num":
                raise ParseError("malformed exponent", col=n[2] + 1)
            if paren:
                self.take(")")
            k = sign * n[1]
            if k < 0:
                if base.degree() > 0:
                    raise ParseError("negative power of a non-constant", col=n[2] + 1)
                c = base.coefficient((0,) * len(self.vars))
                return self.const(1).scale(self.field.pow(self.field.inv(c), -k))
            return base ** k
        return base

    def atom(self):
        t = self.take()
        kind, val, col = t
        if kind == "num":
            return self.const(val)
        if kind == "id":
            if val in self.index:
                return MultiPoly.variable(self.vars, self.index[val], self.field)
            if val == "w" and isinstance(self.field, QuadraticField):
                return MultiPoly.constant(self.vars, self.field.gen, self.field)
            if val == "z" and isinstance(self.field, CyclotomicField):
                return MultiPoly.constant(self.vars, self.field.gen, self.field)
            raise ParseError(f"unknown symbol {val!r}", col=col + 1)
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        if val == "-":
            return -self.power()
        raise ParseError(f"unexpected {val!r}", col=col + 1)


def parse_poly(text: str, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
    return _Parser(text, vars, field).parse()


def expand_vars(spec: str) -> list[str]:
    """``U0 .. U9`` -> [U0, ..., U9]; plain whitespace/comma lists pass through."""
    spec = spec.replace(",", " ")
    toks = spec.split()
    out = []
    i = 0
    while i < len(toks):
        if i + 2 < len(toks) and toks[i + 1] == "..":
            a, b = toks[i], toks[i + 2]
            ma, mb = re.fullmatch(r"(.*?)(\d+)", a), re.fullmatch(r"(.*?)(\d+)", b)
            if not (ma and mb and ma.group(1) == mb.group(1)):
                raise ParseError(f"bad variable range {a} .. {b}")
            out += [f"{ma.group(1)}{k}" for k in range(int(ma.group(2)), int(mb.group(2)) + 1)]
            i += 3
        else:
            out.append(toks[i])
            i += 1
    if len(set(out)) != len(out):
        raise ParseError("duplicate variable names")
    return out


def compress_vars(vars: Sequence[str]) -> str:
    m0 = re.fullmatch(r"(.*?)(\d+)", vars[0]) if vars else None
    if m0 and len(vars) > 2:
        prefix, start = m0.group(1), int(m0.group(2))
        if list(vars) == [f"{prefix}{k}" for k in range(start, start + len(vars))]:
            return f"{vars[0]} .. {vars[-1]}"
    return " ".join(vars)


@dataclass
class PolyFile:
    field: Field
    vars: list[str]
    polys: list[MultiPoly]
    headers: dict = dc_field(default_factory=dict)


def read_poly_text(text: str) -> PolyFile:
    field = None
    vars = None
    headers: dict = {}
    polys = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"([A-Za-z_][\w ]*?):\s*(.*)$", line)
        if m:
            key, val = m.group(1).strip(), m.group(2).strip()
            if key == "field":
                try:
                    field = field_from_tag(val)
                except Exception as exc:
                    raise ParseError(str(exc), lineno) from None
            elif key == "vars":
                vars = expand_vars(val)
            else:
                headers.setdefault(key, []).append((lineno, val))
            continue
        if field is None or vars is None:
            raise ParseError("polynomial before 'field:' and 'vars:' headers", lineno)
        try:
            polys.append(parse_poly(line, vars, field))
        except ParseError as exc:
            raise ParseError(str(exc), lineno, exc.col) from None
    if field is None or vars is None:
        raise ParseError("missing 'field:' or 'vars:' header")
    return PolyFile(field, vars, polys, headers)


def format_poly_text(field: Field, vars: Sequence[str], polys: Sequence[MultiPoly], headers: Sequence[str] = ()) -> str:
    lines = [f"field: {field.tag}", f"vars: {compress_vars(vars)}"]
    lines += list(headers)
    lines += [str(p) for p in polys]
    return "\n".join(lines) + "\n"
