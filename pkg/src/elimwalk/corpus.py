"""Seeded random small ideals for property and acceptance checks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .poly import Polynomial, VariableContext

CONTEXTS = (
    VariableContext(("x",), ("u",)),
    VariableContext(("x",), ("u", "v")),
    VariableContext(("x", "y"), ("u",)),
)


@dataclass(frozen=True)
class RandomIdeal:
    ctx: VariableContext
    generators: tuple[Polynomial, ...]
    sigma: tuple[int, ...]
    tau: tuple[int, ...]


def random_polynomial(
    ctx: VariableContext, rng: random.Random, max_terms=4, max_deg=2, max_total=3, coeffs=3
) -> Polynomial:
    """At most ``max_terms`` terms, coefficients in ``[-coeffs, coeffs]``, total degree <= ``max_total``."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(ctx.nvars))
        while sum(exp) > max_total:
            exp = tuple(rng.randint(0, max_deg) for _ in range(ctx.nvars))
        c = rng.choice([c for c in range(-coeffs, coeffs + 1) if c])
        terms[exp] = c
    return Polynomial(ctx, terms)


def random_ideal(rng: random.Random, max_gens=3, **kw) -> RandomIdeal:
    ctx = rng.choice(CONTEXTS)
    gens = []
    while not gens:
        gens = [g for g in (random_polynomial(ctx, rng, **kw) for _ in range(rng.randint(1, max_gens))) if g]
    sigma = tuple(rng.randint(0, 9) for _ in range(ctx.nvars))
    if not any(sigma):
        sigma = (1,) * ctx.nvars
    tau = (0,) * ctx.n + tuple(rng.randint(1, 5) for _ in range(ctx.m))
    return RandomIdeal(ctx, tuple(gens), sigma, tau)


def corpus(count: int = 50, seed: int = 2024, **kw) -> list[RandomIdeal]:
    rng = random.Random(seed)
    return [random_ideal(rng, **kw) for _ in range(count)]
