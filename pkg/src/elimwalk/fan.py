"""Groebner fans of small ideals: facet-flip enumeration and the experiments built on it."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .cone import GroebnerCone, cone_of
from .groebner import GroebnerBasis, is_ideal_specific_eo, reduced_gb
from .order import MonomialOrder, make_lex, weight_order
from .poly import Polynomial, VariableContext, dot, to_fraction

MAX_FAN_DIM = 4


class DimensionGuardError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    gb: GroebnerBasis
    cone: GroebnerCone

    @property
    def key(self):
        return self.gb.key()


@dataclass
class GroebnerFan:
    ctx: VariableContext
    cells: dict = field(default_factory=dict)  # basis key -> Cell

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells.values())

    def keys(self) -> set:
        return set(self.cells)

    def labels(self) -> dict:
        """Stable short names ``c0, c1, ...`` following the sorted basis texts."""
        ordered = sorted(self.cells.values(), key=lambda c: c.gb.to_text())
        return {c.key: f"c{i}" for i, c in enumerate(ordered)}

    def cell_for(self, w) -> Cell:
        """A cell containing ``w`` (the first in label order)."""
        hits = neighbourhood(self, w)
        if not hits:
            raise ValueError(f"{w} lies in no cell")
        return sorted(hits, key=lambda c: c.gb.to_text())[0]


def _guard(ctx: VariableContext, max_dim: int):
    if ctx.nvars > max_dim:
        raise DimensionGuardError(
            f"fan enumeration is limited to {max_dim} variables, got {ctx.nvars}"
        )


def flip_order(p: Sequence[int], inside_normal: Sequence[int], ctx: VariableContext) -> MonomialOrder:
    """Order for the cell just beyond a facet: ``p`` first, then the outward direction.

    Rows ``[p, -v]`` are realised as ``[p, k*p - v]`` with ``k`` large enough to
    keep every entry nonnegative; both agree on all ties of ``p``.
    """
    k = max([math.ceil(Fraction(vi, pi)) for vi, pi in zip(inside_normal, p) if vi > 0 and pi > 0] + [0]) + 1
    second = tuple(k * pi - vi for pi, vi in zip(p, inside_normal))
    if any(c < 0 for c in second):
        raise ValueError("facet point must be positive where the normal is")
    return MonomialOrder((tuple(p), second), tuple(range(ctx.nvars)))


def _on_boundary(facet_rays) -> bool:
    d = len(facet_rays[0])
    return any(all(r[i] == 0 for r in facet_rays) for i in range(d))


def enumerate_fan(F: Sequence[Polynomial], *, max_dim: int = MAX_FAN_DIM) -> GroebnerFan:
    """Breadth-first facet flipping from the lex cell."""
    F = [f for f in F if not f.is_zero()]
    ctx = F[0].ctx
    _guard(ctx, max_dim)
    start = reduced_gb(F, make_lex(ctx))
    fan = GroebnerFan(ctx)
    queue = deque([start])
    while queue:
        gb = queue.popleft()
        key = gb.key()
        if key in fan.cells:
            continue
        cone = cone_of(gb)
        fan.cells[key] = Cell(gb, cone)
        for v, on in cone.facets():
            if _on_boundary(on):
                continue
            p = cone.facet_point(on)
            nxt = reduced_gb(gb.polys, flip_order(p, v, ctx))
            if nxt.key() not in fan.cells:
                queue.append(nxt)
    return fan


def simplex_grid(d: int, steps: int):
    """Integer points with coordinates summing to ``steps``."""
    for head in product(range(steps + 1), repeat=d - 1):
        s = sum(head)
        if s <= steps:
            yield head + (steps - s,)


def sample_fan_keys(F: Sequence[Polynomial], *, steps: int = 16, max_dim: int = MAX_FAN_DIM) -> dict:
    """Independent oracle: reduced bases at every point of a simplex grid, keyed like the fan."""
    F = [f for f in F if not f.is_zero()]
    ctx = F[0].ctx
    _guard(ctx, max_dim)
    found = {}
    for w in simplex_grid(ctx.nvars, steps):
        gb = reduced_gb(F, weight_order(w, ctx))
        found.setdefault(gb.key(), gb)
    return found


@dataclass
class CrossCheck:
    fan_cells: int
    grid_cells: int
    steps: int
    extra_in_grid: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.extra_in_grid and self.fan_cells == self.grid_cells


def cross_validate(F: Sequence[Polynomial], fan: GroebnerFan | None = None, *, steps=(16, 32, 64)) -> CrossCheck:
    """Compare flip enumeration with the grid oracle, refining the grid while cells are missing.

    A grid basis that the enumeration lacks is a hard disagreement and stops the
    refinement; thin cells the coarse grid misses are retried on finer grids.
    """
    fan = fan or enumerate_fan(F)
    keys = set(fan.keys())
    rep = None
    for st in steps:
        grid = sample_fan_keys(F, steps=st)
        rep = CrossCheck(len(keys), len(grid), st, [gb for k, gb in grid.items() if k not in keys])
        if rep.extra_in_grid or rep.agree:
            break
    return rep


def neighbourhood(fan: GroebnerFan, w) -> list[Cell]:
    """Every cell whose cone contains ``w``."""
    return [c for c in fan if c.cone.contains(w)]


def ev_region(fan: GroebnerFan, ctx: VariableContext | None = None) -> list[Cell]:
    """Cells whose order eliminates U for this ideal."""
    ctx = ctx or fan.ctx
    return [c for c in fan if is_ideal_specific_eo(c.gb, ctx)]


def is_ev(fan: GroebnerFan, w, ctx: VariableContext | None = None) -> bool:
    ctx = ctx or fan.ctx
    return any(is_ideal_specific_eo(c.gb, ctx) for c in neighbourhood(fan, w))


def on_segment(a, b, w) -> bool:
    a, b, w = ([to_fraction(c) for c in v] for v in (a, b, w))
    d = [y - x for x, y in zip(a, b)]
    if not any(d):
        return a == w
    i = next(i for i, c in enumerate(d) if c)
    t = (w[i] - a[i]) / d[i]
    return 0 <= t <= 1 and all(x + t * c == y for x, c, y in zip(a, d, w))


def check_nonconvexity_witness(fan: GroebnerFan, sigma, tau, omega, ctx: VariableContext | None = None) -> bool:
    """True iff both endpoints are elimination vectors and ``omega`` between them is not."""
    if not on_segment(sigma, tau, omega):
        raise ValueError("omega must lie on the segment sigma-tau")
    return is_ev(fan, sigma, ctx) and is_ev(fan, tau, ctx) and not is_ev(fan, omega, ctx)


@dataclass
class StarCheckReport:
    samples_tested: int
    violations: list
    seed: int
    points_tested: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_record(self, ctx: VariableContext) -> dict:
        fmt = lambda w: [str(c) for c in w]  # noqa: E731
        return {
            "format": 1,
            "samples_tested": self.samples_tested,
            "points_tested": self.points_tested,
            "seed": self.seed,
            "passed": self.passed,
            "violations": [
                {"sigma": fmt(s), "tau": fmt(t), "omega": fmt(w), "gb": gb}
                for s, t, w, gb in self.violations
            ],
        }


def _random_point_in(cone: GroebnerCone, rng: random.Random) -> tuple[Fraction, ...]:
    coeffs = [rng.randint(0, 6) for _ in cone.rays]
    if not any(coeffs):
        coeffs[rng.randrange(len(coeffs))] = 1
    return tuple(Fraction(sum(c * r[i] for c, r in zip(coeffs, cone.rays))) for i in range(cone.dim))


def check_star_shaped(
    fan: GroebnerFan,
    ctx: VariableContext | None = None,
    n_samples: int = 200,
    seed: int = 42,
    points_per_segment: int = 4,
) -> StarCheckReport:
    """Sample segments from elimination-vector cells to the face where X weights vanish.

    Every sampled point on such a segment must again lie in an elimination cell.
    """
    ctx = ctx or fan.ctx
    rng = random.Random(seed)
    region = sorted(ev_region(fan, ctx), key=lambda c: c.gb.to_text())
    violations = []
    points = 0
    for _ in range(n_samples):
        cell = region[rng.randrange(len(region))]
        sigma = _random_point_in(cell.cone, rng)
        tau = (Fraction(0),) * ctx.n + tuple(Fraction(rng.randint(1, 8)) for _ in range(ctx.m))
        ts = [Fraction(rng.randint(1, 63), 64) for _ in range(points_per_segment)] + [Fraction(0), Fraction(1)]
        for t in ts:
            w = tuple(s + t * (u - s) for s, u in zip(sigma, tau))
            points += 1
            if not is_ev(fan, w, ctx):
                witness = fan.cell_for(w).gb.to_text()
                violations.append((sigma, tau, w, witness))
    return StarCheckReport(n_samples, violations, seed, points)


def section_polygons(fan: GroebnerFan) -> list[tuple[str, list[tuple[Fraction, ...]]]]:
    """Each cone cut by the hyperplane ``sum(w) = 1``; 3-D vertex lists are put in cyclic order."""
    labels = fan.labels()
    out = []
    for cell in sorted(fan, key=lambda c: labels[c.key]):
        verts = [tuple(Fraction(c, sum(r)) for c in r) for r in cell.cone.rays]
        if len(verts) > 2 and cell.cone.dim == 3:
            cx = [sum(float(v[i]) for v in verts) / len(verts) for i in range(3)]
            # project onto the plane and sort by angle
            e1 = (1 / math.sqrt(2), -1 / math.sqrt(2), 0.0)
            e2 = (1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6))
            def angle(v):
                dv = [float(v[i]) - cx[i] for i in range(3)]
                return math.atan2(dot(e2, dv), dot(e1, dv))
            verts.sort(key=angle)
        out.append((labels[cell.key], verts))
    return out

