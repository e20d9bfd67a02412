from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from elimwalk.cone import (
    BoundaryClass,
    ConePreconditionError,
    GroebnerCone,
    cone_of,
    nullspace,
    primitive,
    rank,
)
from elimwalk.groebner import NotReducedError, buchberger, reduced_gb
from elimwalk.order import leading_term, weight_order
from elimwalk.poly import dot

from conftest import THREE_CELL, P, ideals, weights


@pytest.fixture
def cells(three_cell):
    ctx, F = three_cell
    return {name: cone_of(reduced_gb(F, weight_order(w, ctx))) for name, w in [("C1", (1, 4)), ("C2", (3, 2)), ("C3", (4, 1))]}


def test_primitive_and_nullspace():
    assert primitive((0, 4)) == (0, 1)
    assert primitive((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
    assert primitive((0, 0)) == (0, 0)
    ns = nullspace([(1, -1, 0)], 3)
    assert len(ns) == 2 and all(dot((1, -1, 0), v) == 0 for v in ns)
    assert rank([(1, 2), (2, 4)], 2) == 1


def test_cone_of_g3_normals(cells):
    assert set(cells["C3"].normals) == {(1, -1), (1, -3), (0, 1)}


def test_cone_of_single_binomial():
    G = reduced_gb([P(THREE_CELL, "x^2 - 1")], weight_order((1, 1), THREE_CELL))
    C = cone_of(G)
    assert C.normals == ((1, 0),)
    assert C.boundary_class() is BoundaryClass.MEETS_OMEGA_U


def test_cone_of_requires_reduced(three_cell):
    ctx, F = three_cell
    with pytest.raises(NotReducedError):
        cone_of(buchberger(F, weight_order((3, 2), ctx)))


def test_membership(cells):
    assert cells["C1"].contains((0, 1))
    assert cells["C3"].contains((1, 0))
    for C in cells.values():
        assert C.contains((0, 0)) and not C.interior_contains((0, 0))
    assert cells["C2"].interior_contains((3, 2))
    # (2, 3) sits in C1: C2 is {u <= x <= 3u}
    assert cells["C1"].interior_contains((2, 3)) and not cells["C2"].contains((2, 3))


def test_rays_and_boundary_classes(cells):
    assert cells["C1"].rays == ((0, 1), (1, 1))
    assert cells["C2"].rays == ((1, 1), (3, 1))
    assert cells["C3"].rays == ((1, 0), (3, 1))
    assert cells["C1"].boundary_class() is BoundaryClass.MEETS_OMEGA_U
    assert cells["C2"].boundary_class() is BoundaryClass.ORIGIN_ONLY
    assert cells["C3"].boundary_class() is BoundaryClass.MEETS_OTHER_BOUNDARY


def test_full_orthant_cone():
    C = GroebnerCone((), THREE_CELL)
    assert C.rays == ((0, 1), (1, 0))
    assert C.boundary_class() is BoundaryClass.MEETS_OMEGA_U


def test_segment_exit(cells, nonconvex):
    C3 = cells["C3"]
    assert C3.segment_exit((4, 1), (5, 1)) == (1, frozenset())
    t, tight = C3.segment_exit((4, 1), (0, 1))
    assert t == Fraction(1, 4) and tight == {(1, -3)}
    # starting on the facet and heading out
    assert C3.segment_exit((3, 1), (0, 1))[0] == 0
    with pytest.raises(ConePreconditionError):
        C3.segment_exit((0, 1), (1, 0))
    with pytest.raises(ConePreconditionError):
        C3.segment_exit((4, 1), (4, 1))

    ctx, F = nonconvex
    sigma, tau = (9, 12, 0), (9, 0, 10)
    C = cone_of(reduced_gb(F, weight_order(sigma, ctx)))
    t, tight = C.segment_exit(sigma, tau)
    assert 0 < t < Fraction(1, 2)
    exit_pt = [s + t * (b - s) for s, b in zip(sigma, tau)]
    assert C.contains(exit_pt) and not C.contains((9, 6, 5))


def test_facets(cells):
    facets = cells["C2"].facets()
    assert sorted(r for _, r in facets) == [((1, 1),), ((3, 1),)]
    for v, rays in facets:
        p = cells["C2"].facet_point(rays)
        assert dot(v, p) == 0 and cells["C2"].contains(p)


@given(ideals(max_gens=2), st.data())
def test_representation_soundness(ideal, data):
    ctx, F = ideal
    w = data.draw(weights(ctx))
    G = reduced_gb(F, weight_order(w, ctx))
    C = cone_of(G)
    assert C.contains(w)
    pt = C.interior_point()
    if C.interior_contains(pt):
        H = reduced_gb(F, weight_order(pt, ctx))
        assert set(H.leading_exponents()) == set(G.leading_exponents())
    for g in G.polys:
        assert leading_term(g, G.order)[1] in set(g.initial_form(w).support())


@given(ideals(max_gens=2), st.data())
def test_exit_point_is_last_point_inside(ideal, data):
    ctx, F = ideal
    a = data.draw(weights(ctx))
    b = data.draw(weights(ctx))
    C = cone_of(reduced_gb(F, weight_order(a, ctx)))
    if a == b:
        return
    t, _ = C.segment_exit(a, b)
    pt = lambda s: [x + s * (y - x) for x, y in zip(a, b)]  # noqa: E731
    assert C.contains(pt(t))
    if t < 1:
        assert not C.contains(pt(t + (1 - t) / 1000))


@given(st.data())
def test_degree_ordering_survives_on_segment(data):
    # sigma, tau in the U face, omega strictly before tau
    n, m = 1, 2
    sigma = data.draw(st.tuples(*[st.integers(0, 9)] * (n + m)))
    tau = (0,) * n + data.draw(st.tuples(*[st.integers(0, 9)] * m))
    t = data.draw(st.fractions(0, 1).filter(lambda t: t > 0))
    omega = [t * s + (1 - t) * u for s, u in zip(sigma, tau)]
    alpha = data.draw(st.tuples(*[st.integers(0, 4)] * n))
    gamma = data.draw(st.tuples(*[st.integers(0, 4)] * n))
    beta = data.draw(st.tuples(*[st.integers(0, 4)] * m))
    ab, g0 = alpha + beta, gamma + (0,) * m
    if dot(sigma, ab) > dot(sigma, g0):
        assert dot(omega, ab) > dot(omega, g0)
