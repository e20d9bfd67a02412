"""Reader for ideal problem files.

::

    # comments run to end of line
    ring x ; eliminate u
    f1 = x^2 - 1
    f2 = x*u^2 - x - u
    weight s3 = (4, 1)

Variables before ``eliminate`` are kept (X), the ones after are eliminated (U).
Polynomials are parsed by recursive descent; ``p/q`` coefficients, ``^``
powers, ``*`` products, ``+``/``-`` and parentheses are supported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .order import make_lex
from .poly import Polynomial, VariableContext, Weight


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.msg, self.line, self.col = msg, line, col


@dataclass
class ProblemFile:
    context: VariableContext
    generators: dict[str, Polynomial] = field(default_factory=dict)
    weights: dict[str, Weight] = field(default_factory=dict)

    @property
    def polys(self) -> list[Polynomial]:
        return list(self.generators.values())

    def to_text(self) -> str:
        ctx = self.context
        head = "ring " + " ".join(ctx.x_vars)
        if ctx.u_vars:
            head += " ; eliminate " + " ".join(ctx.u_vars)
        lines = [head]
        lex = make_lex(ctx)
        lines += [f"{name} = {p.to_text(lex)}" for name, p in self.generators.items()]
        lines += [
            f"weight {name} = (" + ", ".join(str(c) for c in w) + ")"
            for name, w in self.weights.items()
        ]
        return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _PolyParser:
    """expr := ['-'|'+'] term (('+'|'-') term)* ; term := factor ('*' factor | '/' int)* ;
    factor := atom ['^' int] ; atom := int | name | '(' expr ')'"""

    def __init__(self, text: str, ctx: VariableContext, line: int, col0: int):
        self.ctx, self.line = ctx, line
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(0).strip():
                kind = "int" if m.group(1) else "name" if m.group(2) else "op"
                self.toks.append((kind, m.group(m.lastindex), col0 + m.start(m.lastindex) + 1))
            pos = m.end()
        self.i = 0

    def err(self, msg, tok=None):
        tok = tok or (self.toks[self.i] if self.i < len(self.toks) else None)
        col = tok[2] if tok else (self.toks[-1][2] + 1 if self.toks else 1)
        raise ParseError(msg, self.line, col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, 0)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            self.err("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            self.err(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            if op == "*":
                acc = acc * self.factor()
            else:
                kind, val, _ = self.take()
                if kind != "int":
                    self.err("only integer denominators are allowed after '/'")
                if int(val) == 0:
                    self.err("division by zero")
                acc = acc.scale(Fraction(1, int(val)))
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            if self.peek()[1] == "-":
                self.err("negative exponent")
            kind, val, _ = self.take()
            if kind != "int":
                self.err("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        kind, val, _ = tok
        if kind == "int":
            self.take()
            return self.ctx.const(int(val))
        if kind == "name":
            self.take()
            if val not in self.ctx.names:
                self.err(f"unknown variable {val!r}", tok)
            return self.ctx.var(val)
        if val == "(":
            self.take()
            p = self.expr()
            if self.take()[1] != ")":
                self.err("expected ')'")
            return p
        self.err(f"unexpected {val!r}" if val else "unexpected end of input")


def parse_polynomial(text: str, ctx: VariableContext, line: int = 0, col0: int = 0) -> Polynomial:
    return _PolyParser(text, ctx, line, col0).parse()


_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_RING = re.compile(r"^ring\s+(.*?)\s*(?:;\s*eliminate\s+(.*))?$")
_WEIGHT = re.compile(rf"^weight\s+({_NAME})\s*=\s*\((.*)\)\s*$")
_DEF = re.compile(rf"^({_NAME})\s*=(.*)$")


def _names(text: str, line: int, col: int) -> list[str]:
    names = text.split()
    for nm in names:
        if not re.fullmatch(_NAME, nm):
            raise ParseError(f"bad variable name {nm!r}", line, col)
    return names


def parse_problem(text: str) -> ProblemFile:
    ctx = None
    prob = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip())
        if stripped.startswith("ring ") or stripped == "ring":
            if ctx is not None:
                raise ParseError("duplicate ring declaration", lineno, col0 + 1)
            m = _RING.match(stripped)
            xs = _names(m.group(1), lineno, col0 + 1) if m else []
            us = _names(m.group(2), lineno, col0 + 1) if m and m.group(2) else []
            if not xs and not us:
                raise ParseError("ring needs at least one variable", lineno, col0 + 1)
            try:
                ctx = VariableContext(tuple(xs), tuple(us))
            except ValueError as e:
                raise ParseError(str(e), lineno, col0 + 1) from None
            prob = ProblemFile(ctx)
            continue
        if ctx is None:
            raise ParseError("expected 'ring ...' before definitions", lineno, col0 + 1)
        m = _WEIGHT.match(stripped)
        if m:
            name = m.group(1)
            if name in prob.weights:
                raise ParseError(f"duplicate weight {name!r}", lineno, col0 + 1)
            try:
                w = tuple(Fraction(c.strip()) for c in m.group(2).split(","))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad weight entries in {m.group(2)!r}", lineno, col0 + 1) from None
            if len(w) != ctx.nvars:
                raise ParseError(f"weight {name!r} needs {ctx.nvars} entries", lineno, col0 + 1)
            if any(c < 0 for c in w):
                raise ParseError(f"weight {name!r} has a negative entry", lineno, col0 + 1)
            prob.weights[name] = w
            continue
        m = _DEF.match(stripped)
        if not m:
            raise ParseError(f"cannot parse line {stripped!r}", lineno, col0 + 1)
        name = m.group(1)
        if name in prob.generators:
            raise ParseError(f"duplicate definition of {name!r}", lineno, col0 + 1)
        prob.generators[name] = parse_polynomial(m.group(2), ctx, lineno, col0 + m.start(2))
    if prob is None:
        raise ParseError("missing ring declaration")
    if not prob.generators:
        raise ParseError("no generators given")
    return prob
