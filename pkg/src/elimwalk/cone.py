"""Groebner cones in the nonnegative orthant, described by inequalities.

A cone is ``{w >= 0 : w . v >= 0 for every normal v}``. Normals come from a
reduced basis: leading exponent minus every other exponent of the same
element. Everything is exact; the extreme rays are found by brute force over
subsets of tight constraints, which is plenty for four or fewer variables.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .groebner import GroebnerBasis, NotReducedError
from .order import leading_term
from .poly import VariableContext, dot, to_fraction


class BoundaryClass(str, enum.Enum):
    ORIGIN_ONLY = "ORIGIN_ONLY"
    MEETS_OMEGA_U = "MEETS_OMEGA_U"
    MEETS_OTHER_BOUNDARY = "MEETS_OTHER_BOUNDARY"


class ConePreconditionError(ValueError):
    pass


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    v = [to_fraction(c) for c in v]
    den = math.lcm(*(c.denominator for c in v))
    ints = [int(c * den) for c in v]
    g = math.gcd(*ints)
    return tuple(c // g for c in ints) if g else tuple(ints)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Exact basis of ``{x : rows @ x = 0}`` by Gauss-Jordan elimination."""
    mat = [[to_fraction(c) for c in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [c * inv for c in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -mat[i][free]
        basis.append(x)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return ncols - len(nullspace(rows, ncols))


@dataclass(frozen=True)
class GroebnerCone:
    normals: tuple[tuple[int, ...], ...]
    ctx: VariableContext
    source: str = ""

    @property
    def dim(self) -> int:
        return self.ctx.nvars

    def orthant_normals(self) -> tuple[tuple[int, ...], ...]:
        d = self.dim
        return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))

    def constraints(self) -> tuple[tuple[int, ...], ...]:
        """All inequalities, orthant ones included, deduplicated."""
        out = list(self.normals)
        out += [e for e in self.orthant_normals() if e not in out]
        return tuple(out)

    def contains(self, w: Sequence) -> bool:
        return all(c >= 0 for c in w) and all(dot(v, w) >= 0 for v in self.normals)

    def interior_contains(self, w: Sequence) -> bool:
        """Whether ``w`` represents the defining order (strict on every basis-derived normal)."""
        return all(c >= 0 for c in w) and all(dot(v, w) > 0 for v in self.normals)

    @cached_property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        """Extreme rays as primitive integer vectors, sorted."""
        d = self.dim
        cons = self.constraints()
        found = set()
        for sub in combinations(cons, d - 1):
            ns = nullspace(sub, d)
            if len(ns) != 1:
                continue
            r = ns[0]
            for cand in (r, [-c for c in r]):
                if all(dot(v, cand) >= 0 for v in cons):
                    found.add(primitive(cand))
        return tuple(sorted(found))

    def facets(self) -> list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]:
        """``(inside normal, rays)`` for each facet, deduplicated by ray set."""
        d = self.dim
        out = {}
        for v in self.constraints():
            on = tuple(r for r in self.rays if dot(v, r) == 0)
            if on and on not in out and rank(on, d) == d - 1:
                out[on] = v
        return [(v, on) for on, v in out.items()]

    def facet_point(self, facet_rays) -> tuple[int, ...]:
        """A relative-interior point of a facet: the sum of its rays."""
        return tuple(sum(r[i] for r in facet_rays) for i in range(self.dim))

    def interior_point(self) -> tuple[int, ...]:
        return tuple(sum(r[i] for r in self.rays) for i in range(self.dim))

    def segment_exit(self, a: Sequence, b: Sequence) -> tuple[Fraction, frozenset]:
        """Largest ``t`` in [0, 1] with ``a + t (b - a)`` still in the cone, plus the normals that bind."""
        a = [to_fraction(c) for c in a]
        b = [to_fraction(c) for c in b]
        if a == b:
            raise ConePreconditionError("segment endpoints coincide")
        if not self.contains(a):
            raise ConePreconditionError(f"start point {a} is not in the cone")
        d = [y - x for x, y in zip(a, b)]
        best = Fraction(1)
        tight: set = set()
        for v in self.normals:
            slope = dot(v, d)
            if slope < 0:
                t = Fraction(-dot(v, a)) / slope
                if t < best:
                    best, tight = t, {v}
                elif t == best and best < 1:
                    tight.add(v)
        return best, frozenset(tight)

    def meets_omega_u_strictly(self) -> bool:
        """Whether the cone holds a point ``(0, g)`` with every U weight positive."""
        n, m = self.ctx.n, self.ctx.m
        if m == 0:
            return False
        covered = set()
        for r in self.rays:
            if not any(r[:n]):
                covered.update(i for i in range(m) if r[n + i] > 0)
        return len(covered) == m

    def boundary_class(self) -> BoundaryClass:
        n = self.ctx.n
        if any(not any(r[:n]) for r in self.rays):
            return BoundaryClass.MEETS_OMEGA_U
        if any(0 in r for r in self.rays):
            return BoundaryClass.MEETS_OTHER_BOUNDARY
        return BoundaryClass.ORIGIN_ONLY

    def to_record(self) -> dict:
        return {
            "normals": [list(v) for v in self.normals],
            "rays": [list(r) for r in self.rays],
            "boundary_class": self.boundary_class().value,
        }


def cone_of(G: GroebnerBasis) -> GroebnerCone:
    if not (G.reduced and G.normed):
        raise NotReducedError("cone_of needs a normed reduced basis")
    ctx = G.ctx
    normals = set()
    for g in G.polys:
        lead = leading_term(g, G.order)[1]
        for e in g.support():
            if e != lead:
                normals.add(primitive([a - b for a, b in zip(lead, e)]))
    return GroebnerCone(tuple(sorted(normals)), ctx, G.to_text())


def segment_exit(cone: GroebnerCone, a, b):
    return cone.segment_exit(a, b)


def boundary_class(cone: GroebnerCone) -> BoundaryClass:
    return cone.boundary_class()
