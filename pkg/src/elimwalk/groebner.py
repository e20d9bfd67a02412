"""Buchberger's algorithm, interreduction and elimination predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .order import MonomialOrder, leading_coefficient, leading_term, sorted_terms
from .poly import Exponent, Polynomial, VariableContext
from .reduction import divides, exp_lcm, remainder, s_polynomial


class ZeroIdealError(ValueError):
    pass


class NotReducedError(ValueError):
    pass


class NotIdealSpecificError(ValueError):
    pass


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = False
    normed: bool = False

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    @property
    def ctx(self) -> VariableContext:
        return self.polys[0].ctx

    def leading_exponents(self) -> list[Exponent]:
        return [leading_term(g, self.order)[1] for g in self.polys]

    def key(self) -> tuple:
        """Order-independent identity of a reduced basis: polynomials plus their leading exponents."""
        return tuple(
            sorted(
                (leading_term(g, self.order)[1], tuple(sorted(g.items())))
                for g in self.polys
            )
        )

    def texts(self) -> list[str]:
        """Canonical text of each element, ascending by leading monomial."""
        return [g.to_text(self.order) for g in self.polys]

    def to_text(self) -> str:
        return "{" + ", ".join(self.texts()) + "}"


def _canonical_sort(polys: Iterable[Polynomial], order: MonomialOrder) -> tuple[Polynomial, ...]:
    return tuple(
        sorted(polys, key=lambda g: [order.key(e) for _, e in sorted_terms(g, order)])
    )


def buchberger(
    F: Sequence[Polynomial],
    order: MonomialOrder,
    *,
    first_criterion: bool = True,
    chain_criterion: bool = True,
    on_add: Callable[[list[Polynomial]], None] | None = None,
) -> GroebnerBasis:
    """Complete ``F`` to a Groebner basis; the inputs are kept verbatim.

    Pairs are processed in FIFO order. ``first_criterion`` skips pairs with
    coprime leading monomials; ``chain_criterion`` skips ``(i, j)`` when some
    ``k`` with ``lm(g_k) | lcm(lm(g_i), lm(g_j))`` already had both pairs
    ``(i, k)`` and ``(j, k)`` treated. ``on_add`` is called with the current
    basis list after the start and after every new element.
    """
    G = [f for f in F if not f.is_zero()]
    if not G:
        raise ZeroIdealError("zero ideal basis")
    leads = [leading_term(g, order)[1] for g in G]
    pairs = deque((i, j) for j in range(len(G)) for i in range(j))
    done: set[tuple[int, int]] = set()
    if on_add:
        on_add(list(G))
    while pairs:
        i, j = pairs.popleft()
        a, b = leads[i], leads[j]
        if first_criterion and all(x == 0 or y == 0 for x, y in zip(a, b)):
            done.add((i, j))
            continue
        if chain_criterion:
            lcm = exp_lcm(a, b)
            if any(
                k != i and k != j and divides(leads[k], lcm)
                and (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done
                for k in range(len(G))
            ):
                done.add((i, j))
                continue
        done.add((i, j))
        s = s_polynomial(G[i], G[j], order)
        if s.is_zero():
            continue
        r = remainder(s, G, order).remainder
        if r.is_zero():
            continue
        G.append(r)
        leads.append(leading_term(r, order)[1])
        k = len(G) - 1
        pairs.extend((i, k) for i in range(k))
        if on_add:
            on_add(list(G))
    return GroebnerBasis(tuple(G), order)


def interreduce(
    H: GroebnerBasis,
    *,
    on_step: Callable[[list[Polynomial]], None] | None = None,
) -> GroebnerBasis:
    """Turn a Groebner basis into the normed reduced one.

    Each element is replaced by its remainder modulo the others until a full
    sweep changes nothing; zero remainders are dropped, and leading
    coefficients are normalised in a final pass.
    """
    order = H.order
    cur = [g for g in H.polys if not g.is_zero()]
    if on_step:
        on_step(list(cur))
    changed = True
    while changed:
        changed = False
        for p in list(cur):
            idx = next((k for k, q in enumerate(cur) if q is p), None)
            if idx is None:
                continue
            others = cur[:idx] + cur[idx + 1:]
            p2 = remainder(p, others, order).remainder if others else p
            if p2 != p:
                changed = True
                if p2.is_zero():
                    del cur[idx]
                else:
                    cur[idx] = p2
                if on_step:
                    on_step(list(cur))
    normed = [g.scale(1 / leading_coefficient(g, order)) for g in cur]
    return GroebnerBasis(_canonical_sort(normed, order), order, reduced=True, normed=True)


def reduced_gb(F: Sequence[Polynomial], order: MonomialOrder, **kw) -> GroebnerBasis:
    return interreduce(buchberger(F, order, **kw))


# ---- checks on bases ----

def is_groebner(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    G = list(G)
    for j in range(len(G)):
        for i in range(j):
            s = s_polynomial(G[i], G[j], order)
            if s and remainder(s, G, order).remainder:
                return False
    return True


def is_reduced(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    G = list(G)
    for g in G:
        lg = leading_term(g, order)[1]
        for h in G:
            if h is g:
                continue
            if any(divides(lg, e) for e in h.support()):
                return False
    return True


def is_normed(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    return all(leading_coefficient(g, order) == 1 for g in G)


# ---- elimination ----

def lead_x(G: Iterable[Polynomial], order: MonomialOrder, ctx: VariableContext) -> set[Polynomial]:
    """Elements whose leading monomial is free of U variables."""
    return {g for g in G if ctx.is_x_exponent(leading_term(g, order)[1])}


def basis_lead_x(G: GroebnerBasis, ctx: VariableContext) -> set[Polynomial]:
    return lead_x(G.polys, G.order, ctx)


def is_ideal_specific_eo(G: GroebnerBasis, ctx: VariableContext) -> bool:
    """Whether the order of the reduced basis ``G`` eliminates U for this ideal."""
    if not (G.reduced and G.normed):
        raise NotReducedError("the predicate is defined on the normed reduced basis")
    return all(g.in_x() for g in basis_lead_x(G, ctx))


def elimination_basis(G: GroebnerBasis, ctx: VariableContext) -> tuple[Polynomial, ...]:
    """``G`` intersected with K[X]; the reduced basis of the elimination ideal."""
    if not is_ideal_specific_eo(G, ctx):
        raise NotIdealSpecificError("order is not I-specific")
    return tuple(g for g in G.polys if g.in_x())

