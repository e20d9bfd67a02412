"""Sparse multivariate polynomials over the rationals.

Variables are split into an X block (kept) and a U block (to be eliminated);
exponent vectors list the X exponents first, then the U exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence

from gmpy2 import mpq

if TYPE_CHECKING:
    from .order import MonomialOrder

Exponent = tuple[int, ...]
Weight = tuple[Fraction, ...]
# coefficients are exact rationals; mpq interoperates with Fraction and int
Coefficient = mpq
_MPQ = type(mpq(0))
_SCALARS = (int, Fraction, _MPQ)


class ContextMismatch(ValueError):
    """Operands live over different variable contexts."""


class ZeroPolynomialError(ValueError):
    """An operation that is undefined for the zero polynomial was requested."""


@dataclass(frozen=True)
class VariableContext:
    x_vars: tuple[str, ...]
    u_vars: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x_vars", tuple(self.x_vars))
        object.__setattr__(self, "u_vars", tuple(self.u_vars))
        names = self.x_vars + self.u_vars
        if not names:
            raise ValueError("a context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @property
    def names(self) -> tuple[str, ...]:
        return self.x_vars + self.u_vars

    @property
    def n(self) -> int:
        return len(self.x_vars)

    @property
    def m(self) -> int:
        return len(self.u_vars)

    @property
    def nvars(self) -> int:
        return self.n + self.m

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def is_x_exponent(self, exp: Exponent) -> bool:
        """True when the monomial ``exp`` involves no U variable."""
        return not any(exp[self.n:])

    def zero_exponent(self) -> Exponent:
        return (0,) * self.nvars

    def var(self, name: str) -> "Polynomial":
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Polynomial(self, {tuple(exp): mpq(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.names)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.zero_exponent(): mpq(c)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})


def to_fraction(c) -> Fraction:
    """Exact conversion to ``Fraction``.

    ``Fraction(mpq)`` would keep gmpy2 integers as numerator and denominator,
    which later breaks mixed comparisons, so go through plain ints.
    """
    if isinstance(c, _MPQ):
        return Fraction(int(c.numerator), int(c.denominator))
    return Fraction(c)


def as_weight(w: Iterable) -> Weight:
    """Convert an iterable of numbers/strings to an exact weight tuple."""
    out = tuple(to_fraction(c) for c in w)
    if any(c < 0 for c in out):
        raise ValueError(f"weight vector must be nonnegative, got {w!r}")
    return out


def dot(w: Sequence, exp: Sequence) -> Fraction | int:
    return sum(a * b for a, b in zip(w, exp))


class Polynomial:
    """Immutable polynomial: a mapping from exponent tuples to nonzero rationals."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Mapping[Exponent, object] | None = None):
        self.ctx = ctx
        clean: dict[Exponent, mpq] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != ctx.nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for context {ctx.names}")
            c = mpq(c)
            if c:
                clean[exp] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms):
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.ctx = ctx
        p._terms = terms
        p._hash = None
        return p

    # ---- basic protocol ----
    @property
    def terms(self) -> Mapping[Exponent, mpq]:
        return self._terms

    def items(self):
        return self._terms.items()

    def support(self) -> Iterator[Exponent]:
        return iter(self._terms)

    def coeff(self, exp: Exponent) -> mpq:
        return self._terms.get(tuple(exp), mpq(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._terms == other._terms
        if isinstance(other, _SCALARS):
            return self == self.ctx.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx.names} vs {other.ctx.names}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, _SCALARS):
            return self.ctx.const(other)
        return NotImplemented

    # ---- ring arithmetic ----
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Polynomial._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, mpq] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ctx.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = mpq(c)
        if not c:
            return self.ctx.zero()
        return Polynomial._raw(self.ctx, {e: v * c for e, v in self._terms.items()})

    def mul_term(self, c, exp: Exponent) -> "Polynomial":
        """Multiply by the single term ``c * y^exp``."""
        c = mpq(c)
        if not c:
            return self.ctx.zero()
        return Polynomial._raw(
            self.ctx,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self._terms.items()},
        )

    # ---- weights ----
    def weighted_degree(self, w: Sequence) -> Fraction:
        if not self._terms:
            raise ZeroPolynomialError("degree of the zero polynomial is undefined")
        return Fraction(max(dot(w, e) for e in self._terms))

    def initial_form(self, w: Sequence) -> "Polynomial":
        top = self.weighted_degree(w)
        return Polynomial._raw(
            self.ctx, {e: c for e, c in self._terms.items() if dot(w, e) == top}
        )

    def in_x(self) -> bool:
        """True when no term involves a U variable."""
        return all(self.ctx.is_x_exponent(e) for e in self._terms)

    # ---- text ----
    def to_text(self, order: "MonomialOrder | None" = None) -> str:
        if order is None:
            from .order import make_lex

            order = make_lex(self.ctx)
        exps = sorted(self._terms, key=order.key, reverse=True)
        return format_terms([(self._terms[e], e) for e in exps], self.ctx.names)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


def format_monomial(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(terms: Sequence[tuple[mpq, Exponent]], names: Sequence[str]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (c, exp) in enumerate(terms):
        mono = format_monomial(exp, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)
