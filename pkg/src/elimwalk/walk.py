"""Groebner walk towards the U face, stopping at the first ideal-specific elimination order."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .cone import cone_of, rank
from .groebner import (
    GroebnerBasis,
    basis_lead_x,
    buchberger,
    elimination_basis,
    interreduce,
    is_ideal_specific_eo,
    lead_x,
    reduced_gb,
)
from .order import MonomialOrder, compose_weight_order, leading_term, make_lex
from .poly import Polynomial, VariableContext, as_weight


class WalkMode(str, enum.Enum):
    IMPROVED = "improved"
    TRAN = "tran"


class StopReason(str, enum.Enum):
    IEO_REACHED = "IEO_REACHED"
    TAU_REACHED = "TAU_REACHED"


class WalkPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class WalkStep:
    k: int
    omega: tuple[Fraction, ...]
    t: Fraction
    order: MonomialOrder
    gb: GroebnerBasis
    is_ieo: bool
    tight_normals: frozenset = frozenset()

    @property
    def generic(self) -> bool:
        # the crossing into this cell went through a facet, not a lower-dimensional face
        return len(self.tight_normals) <= 1 or rank(list(self.tight_normals), len(self.omega)) <= 1

    def to_record(self, ctx: VariableContext) -> dict:
        return {
            "k": self.k,
            "omega": [str(c) for c in self.omega],
            "t": str(self.t),
            "order": self.order.to_text(ctx),
            "gb": self.gb.texts(),
            "is_ieo": self.is_ieo,
            "tight_normals": sorted(list(v) for v in self.tight_normals),
            "generic": self.generic,
        }


@dataclass
class WalkTrace:
    steps: list[WalkStep] = field(default_factory=list)
    stop_reason: StopReason | None = None
    conversions: int = 0
    mode: WalkMode = WalkMode.IMPROVED

    @property
    def final(self) -> WalkStep:
        return self.steps[-1]

    def to_record(self, ctx: VariableContext) -> dict:
        return {
            "format": 1,
            "mode": self.mode.value,
            "stop_reason": self.stop_reason.value if self.stop_reason else None,
            "conversions": self.conversions,
            "steps": [s.to_record(ctx) for s in self.steps],
        }


Converter = Callable[[GroebnerBasis, MonomialOrder], GroebnerBasis]


def _default_convert(G: GroebnerBasis, order: MonomialOrder) -> GroebnerBasis:
    return reduced_gb(G.polys, order)


def _check_inputs(ctx, sigma, tau, strict_tau=True):
    try:
        sigma, tau = as_weight(sigma), as_weight(tau)
    except ValueError as e:
        raise WalkPreconditionError(str(e)) from None
    if len(sigma) != ctx.nvars or len(tau) != ctx.nvars:
        raise WalkPreconditionError("weight vectors must have one entry per variable")
    if any(tau[: ctx.n]):
        raise WalkPreconditionError("tau must vanish on X")
    if strict_tau and not all(c > 0 for c in tau[ctx.n:]):
        raise WalkPreconditionError("tau must vanish on X and be strictly positive on U")
    return sigma, tau


def _walk(
    F: Sequence[Polynomial],
    ctx: VariableContext,
    sigma,
    tau,
    tau_order: MonomialOrder | None,
    sigma_order: MonomialOrder | None,
    stop: Callable[[GroebnerBasis, bool, tuple], bool],
    convert: Converter,
    mode: WalkMode,
    strict_tau: bool = True,
) -> WalkTrace:
    sigma, tau = _check_inputs(ctx, sigma, tau, strict_tau)
    tau_order = tau_order or compose_weight_order(tau, make_lex(ctx))
    order = sigma_order or compose_weight_order(sigma, make_lex(ctx))
    G = reduced_gb(F, order)
    trace = WalkTrace(mode=mode)
    omega, t, tight, k = sigma, Fraction(0), frozenset(), 0
    while True:
        ieo = is_ideal_specific_eo(G, ctx)
        trace.steps.append(WalkStep(k, omega, t, order, G, ieo, tight))
        if stop(G, ieo, omega):
            trace.stop_reason = StopReason.TAU_REACHED if omega == tau else StopReason.IEO_REACHED
            return trace
        if omega == tau:
            raise RuntimeError("reached tau without meeting the stopping criterion")
        s, tight = cone_of(G).segment_exit(omega, tau)
        if s == 0 and order.same_as(compose_weight_order(omega, tau_order)):
            raise RuntimeError(f"walk made no progress at {omega}")
        # s == 0 is possible once, when the start order does not point towards tau
        omega = tuple(a + s * (b - a) for a, b in zip(omega, tau))
        t = t + s * (1 - t)
        k += 1
        order = compose_weight_order(omega, tau_order)
        G = convert(G, order)
        trace.conversions += 1


def eliminate_walk(
    F: Sequence[Polynomial],
    ctx: VariableContext,
    sigma,
    tau,
    tau_order: MonomialOrder | None = None,
    mode: WalkMode | str = WalkMode.IMPROVED,
    *,
    sigma_order: MonomialOrder | None = None,
    convert: Converter | None = None,
) -> tuple[tuple[Polynomial, ...], WalkTrace]:
    """Walk from ``sigma`` towards ``tau`` and return the elimination ideal's reduced basis.

    ``improved`` stops at the first cell whose order is an ideal-specific
    elimination order; ``tran`` waits for a cell touching the U face at a
    point with all U weights positive.
    """
    mode = WalkMode(mode)
    if mode is WalkMode.IMPROVED:
        stop = lambda G, ieo, w: ieo  # noqa: E731
    else:
        stop = lambda G, ieo, w: cone_of(G).meets_omega_u_strictly()  # noqa: E731
    trace = _walk(F, ctx, sigma, tau, tau_order, sigma_order, stop, convert or _default_convert, mode)
    return elimination_basis(trace.final.gb, ctx), trace


# ---- instrumentation ----

@dataclass
class ConversionCheck:
    k: int
    applicable: bool
    failures: list[str] = field(default_factory=list)
    states_checked: int = 0
    generic: bool = True

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class InstrumentationReport:
    conversions: list[ConversionCheck]
    trace: WalkTrace

    @property
    def checked(self) -> list[ConversionCheck]:
        return [c for c in self.conversions if c.applicable]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conversions)

    @property
    def non_generic(self) -> bool:
        return not all(c.generic for c in self.conversions)


class _LeadXWatcher:
    """Compares every intermediate basis of one conversion against the source basis."""

    def __init__(self, src: GroebnerBasis, target: MonomialOrder, ctx: VariableContext, record: ConversionCheck):
        self.src, self.target, self.ctx, self.record = src, target, ctx, record
        self.expected = basis_lead_x(src, ctx)

    def __call__(self, polys: list[Polynomial], stage: str = ""):
        rec = self.record
        rec.states_checked += 1
        got = lead_x(polys, self.target, self.ctx)
        if got != self.expected:
            extra = sorted(str(p) for p in got - self.expected)
            missing = sorted(str(p) for p in self.expected - got)
            rec.failures.append(f"{stage}: lead_X changed (+{extra} -{missing})")
        for g in self.expected & got:
            if leading_term(g, self.src.order) != leading_term(g, self.target):
                rec.failures.append(f"{stage}: leading term of {g} moved")
        for p in polys:
            lt_t = leading_term(p, self.target)[1]
            if self.ctx.is_x_exponent(lt_t) and leading_term(p, self.src.order)[1] != lt_t:
                rec.failures.append(f"{stage}: X-leading {p} disagrees with the source order")


def instrumented_convert(
    src: GroebnerBasis, target: MonomialOrder, ctx: VariableContext, record: ConversionCheck
) -> GroebnerBasis:
    """One basis conversion through Buchberger and Interreduce with every state checked."""
    watch = _LeadXWatcher(src, target, ctx, record)
    H = buchberger(src.polys, target, on_add=lambda ps: watch(ps, "buchberger"))
    out = interreduce(H, on_step=lambda ps: watch(ps, "interreduce"))
    watch(list(out.polys), "output")
    return out


def walk_instrumentation_check(
    F: Sequence[Polynomial],
    ctx: VariableContext,
    sigma,
    tau,
    tau_order: MonomialOrder | None = None,
    *,
    sigma_order: MonomialOrder | None = None,
    mode: WalkMode | str | None = None,
) -> InstrumentationReport:
    """Re-run a walk with every conversion instrumented.

    With ``mode=None`` the walk runs all the way to ``tau``, which may then be
    any point of the U face (zero U weights allowed). Conversions that
    start from a cell which is not an elimination cell are recorded but not
    checked, since the preservation property only speaks about those. The
    same goes for a conversion that lands exactly on ``tau``.
    """
    checks: list[ConversionCheck] = []
    tau_w = as_weight(tau)

    def convert(G, order):
        # the preservation argument needs omega != tau: at tau the X weights
        # may all vanish and the tie-break is free to re-sort K[X]
        applicable = is_ideal_specific_eo(G, ctx) and order.rows[0] != tau_w
        rec = ConversionCheck(len(checks) + 1, applicable)
        checks.append(rec)
        if not rec.applicable:
            return _default_convert(G, order)
        return instrumented_convert(G, order, ctx, rec)

    if mode is None:
        trace = _walk(
            F, ctx, sigma, tau, tau_order, sigma_order,
            lambda G, ieo, w: w == tau_w, convert, WalkMode.IMPROVED, strict_tau=False,
        )
    else:
        _, trace = eliminate_walk(F, ctx, sigma, tau, tau_order, mode, sigma_order=sigma_order, convert=convert)
    for rec, step in zip(checks, trace.steps[1:]):
        rec.generic = step.generic
    return InstrumentationReport(checks, trace)
