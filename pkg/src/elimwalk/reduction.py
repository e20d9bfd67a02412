"""Division algorithm, single reduction steps and S-polynomials."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .order import MonomialOrder, leading_term
from .poly import Exponent, Polynomial


class ReductionError(ValueError):
    pass


def _neg(k):
    return tuple(-c for c in k)


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class DivisionCertificate:
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial

    def recombine(self, divisors: Sequence[Polynomial]) -> Polynomial:
        """``sum(q_i * g_i) + r``; equals the dividend when the certificate is valid."""
        total = self.remainder
        for q, g in zip(self.quotients, divisors):
            total = total + q * g
        return total


def reduce_step(f: Polynomial, g: Polynomial, target: Exponent, order: MonomialOrder) -> Polynomial:
    """Cancel the term of ``f`` at ``target`` using ``g``."""
    target = tuple(target)
    c = f.coeff(target)
    if not c:
        raise ReductionError(f"f has no term at {target}")
    gc, ge = leading_term(g, order)
    if not divides(ge, target):
        raise ReductionError(f"leading monomial {ge} does not divide {target}")
    return f - g.mul_term(c / gc, exp_sub(target, ge))


def remainder(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder) -> DivisionCertificate:
    """Divide ``f`` by the ordered tuple ``divisors``.

    The largest reducible monomial is always eliminated first, using the first
    divisor (in tuple order) whose leading monomial divides it.
    """
    divisors = tuple(divisors)
    if any(g.is_zero() for g in divisors):
        raise ReductionError("cannot divide by the zero polynomial")
    ctx = f.ctx
    leads = [leading_term(g, order) for g in divisors]
    quot: list[dict] = [{} for _ in divisors]
    rem: dict = {}
    work = dict(f.terms)
    key = order.key
    # max-heap of pending monomials; stale entries are skipped when popped
    heap = [(_neg(key(e)), e) for e in work]
    heapq.heapify(heap)
    while heap:
        exp = heapq.heappop(heap)[1]
        c = work.pop(exp, None)
        if c is None:
            continue
        for i, (gc, ge) in enumerate(leads):
            if divides(ge, exp):
                factor = c / gc
                shift = exp_sub(exp, ge)
                quot[i][shift] = quot[i].get(shift, 0) + factor
                for e, v in divisors[i].items():
                    if e == ge:
                        continue
                    e2 = tuple(a + b for a, b in zip(e, shift))
                    old = work.get(e2)
                    s = (old or 0) - factor * v
                    if s:
                        work[e2] = s
                        if old is None:
                            heapq.heappush(heap, (_neg(key(e2)), e2))
                    elif old is not None:
                        del work[e2]
                break
        else:
            # nothing divides the largest monomial, so it stays in the remainder
            rem[exp] = c
    return DivisionCertificate(
        tuple(Polynomial(ctx, q) for q in quot),
        Polynomial(ctx, rem),
    )


def is_irreducible(r: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder) -> bool:
    leads = [leading_term(g, order)[1] for g in divisors]
    return not any(divides(ge, e) for e in r.support() for ge in leads)


def s_polynomial(p: Polynomial, q: Polynomial, order: MonomialOrder) -> Polynomial:
    pc, pe = leading_term(p, order)
    qc, qe = leading_term(q, order)
    gamma = exp_lcm(pe, qe)
    return p.mul_term(1 / pc, exp_sub(gamma, pe)) - q.mul_term(1 / qc, exp_sub(gamma, qe))
