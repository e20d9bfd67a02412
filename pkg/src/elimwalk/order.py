"""Monomial orders as weight matrices with a final lexicographic tie-break."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import Exponent, Polynomial, VariableContext, ZeroPolynomialError, as_weight

LT, EQ, GT = -1, 0, 1


def _integer_row(row: Sequence[Fraction]) -> tuple[int, ...]:
    # positive rescaling never changes the comparison
    den = math.lcm(*(c.denominator for c in row)) if row else 1
    return tuple(int(c * den) for c in row)


@dataclass(frozen=True)
class MonomialOrder:
    """Compare monomials by ``(row_1 . a, ..., row_k . a)`` then lex in ``tiebreak``.

    ``tiebreak`` is a permutation of variable indices; the first index listed
    is the most significant variable of the lexicographic tie-break.
    """

    rows: tuple[tuple[Fraction, ...], ...]
    tiebreak: tuple[int, ...]
    _int_rows: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _keys: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        rows = tuple(as_weight(r) for r in self.rows)
        nv = len(self.tiebreak)
        if sorted(self.tiebreak) != list(range(nv)):
            raise ValueError(f"tiebreak {self.tiebreak} is not a permutation")
        if any(len(r) != nv for r in rows):
            raise ValueError("weight rows must match the number of variables")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "tiebreak", tuple(self.tiebreak))
        object.__setattr__(self, "_int_rows", tuple(_integer_row(r) for r in rows))

    @property
    def nvars(self) -> int:
        return len(self.tiebreak)

    def key(self, exp: Exponent) -> tuple[int, ...]:
        """Sort key; larger key means larger monomial."""
        k = self._keys.get(exp)
        if k is None:
            k = tuple(sum(a * b for a, b in zip(r, exp)) for r in self._int_rows) + tuple(
                exp[i] for i in self.tiebreak
            )
            self._keys[exp] = k
        return k

    def compare(self, a: Exponent, b: Exponent) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def lt(self, a: Exponent, b: Exponent) -> bool:
        return self.key(a) < self.key(b)

    def same_as(self, other: "MonomialOrder") -> bool:
        """Structural equality after dropping rows that are positive multiples of earlier rows."""
        return _normal_rows(self) == _normal_rows(other) and self.tiebreak == other.tiebreak

    def to_text(self, ctx: VariableContext) -> str:
        rows = ",".join("[" + ",".join(str(c) for c in r) + "]" for r in self.rows)
        tb = ">".join(ctx.names[i] for i in self.tiebreak)
        return f"rows=[{rows}];tiebreak={tb}"


def _normal_rows(order: MonomialOrder):
    seen = []
    for r in order._int_rows:
        g = math.gcd(*r)
        if g == 0:
            continue
        r = tuple(c // g for c in r)
        if r not in seen:
            seen.append(r)
    return seen


def compare(order: MonomialOrder, a: Exponent, b: Exponent) -> int:
    return order.compare(a, b)


def leading_exponent(f: Polynomial, order: MonomialOrder) -> Exponent:
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no leading term")
    return max(f.support(), key=order.key)


def leading_term(f: Polynomial, order: MonomialOrder) -> tuple[Fraction, Exponent]:
    exp = leading_exponent(f, order)
    return f.coeff(exp), exp


def leading_coefficient(f: Polynomial, order: MonomialOrder) -> Fraction:
    return f.coeff(leading_exponent(f, order))


def sorted_terms(f: Polynomial, order: MonomialOrder) -> list[tuple[Fraction, Exponent]]:
    """Terms of ``f`` in strictly descending order."""
    return [(f.coeff(e), e) for e in sorted(f.support(), key=order.key, reverse=True)]


def make_lex(ctx_or_nvars, perm: Sequence[int] | None = None) -> MonomialOrder:
    nv = ctx_or_nvars.nvars if isinstance(ctx_or_nvars, VariableContext) else int(ctx_or_nvars)
    return MonomialOrder((), tuple(range(nv)) if perm is None else tuple(perm))


def make_universal_elim_order(ctx: VariableContext) -> MonomialOrder:
    """Block order: total U-degree first, then lex. Eliminates U for every ideal."""
    row = (0,) * ctx.n + (1,) * ctx.m
    return MonomialOrder((row,), tuple(range(ctx.nvars)))


def compose_weight_order(w: Sequence, order: MonomialOrder) -> MonomialOrder:
    """The order ``(w | order)``: weighted degree first, ``order`` breaks ties."""
    w = as_weight(w)
    if len(w) != order.nvars:
        raise ValueError("weight length does not match the order")
    return MonomialOrder((w,) + order.rows, order.tiebreak)


def weight_order(w: Sequence, ctx: VariableContext) -> MonomialOrder:
    """``(w | lex)`` in declaration order."""
    return compose_weight_order(w, make_lex(ctx))


_ORDER_RE = re.compile(r"^\s*rows\s*=\s*(\[.*\])\s*(?:;\s*tiebreak\s*=\s*(.*?))?\s*$")


def parse_order(text: str, ctx: VariableContext) -> MonomialOrder:
    """Parse ``rows=[[9,6,5]];tiebreak=x>u>v``; tiebreak defaults to declaration order.

    The shorthands ``lex`` and ``elim`` are accepted as well.
    """
    text = text.strip()
    if text == "lex":
        return make_lex(ctx)
    if text == "elim":
        return make_universal_elim_order(ctx)
    m = _ORDER_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse order spec {text!r}")
    body = m.group(1).strip()[1:-1].strip()
    rows = []
    for chunk in re.findall(r"\[([^\[\]]*)\]", body):
        row = [Fraction(c.strip()) for c in chunk.split(",") if c.strip()]
        if len(row) != ctx.nvars:
            raise ValueError(f"row {chunk!r} has wrong length for {ctx.names}")
        rows.append(row)
    if m.group(2):
        names = [s.strip() for s in m.group(2).split(">")]
        if sorted(names) != sorted(ctx.names):
            raise ValueError(f"tiebreak {m.group(2)!r} is not a permutation of {ctx.names}")
        perm = tuple(ctx.index(s) for s in names)
    else:
        perm = tuple(range(ctx.nvars))
    return MonomialOrder(tuple(rows), perm)
