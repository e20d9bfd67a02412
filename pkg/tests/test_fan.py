from fractions import Fraction

import pytest
from hypothesis import given, settings

from elimwalk.cone import BoundaryClass
from elimwalk.fan import (
    DimensionGuardError,
    check_nonconvexity_witness,
    check_star_shaped,
    cross_validate,
    enumerate_fan,
    ev_region,
    is_ev,
    neighbourhood,
    sample_fan_keys,
    section_polygons,
    simplex_grid,
)
from elimwalk.groebner import reduced_gb
from elimwalk.order import weight_order
from elimwalk.poly import VariableContext

from conftest import G1, G2, G3, G_OMEGA, G_SIGMA, G_TAU, THREE_CELL, P, ideals, matches


@pytest.fixture(scope="module")
def fan5():
    F = [P(THREE_CELL, "x^2 - 1"), P(THREE_CELL, "x*u^2 - x - u")]
    return F, enumerate_fan(F)


@pytest.fixture(scope="module")
def fan2():
    ctx = VariableContext(("x",), ("u", "v"))
    F = [P(ctx, "x + u + v"), P(ctx, "x^2 - 1")]
    return ctx, F, enumerate_fan(F)


def by_basis(fan, ctx, listed):
    hits = [c for c in fan if matches(c.gb, ctx, listed)]
    assert len(hits) == 1
    return hits[0]


def test_three_cell_fan(fan5):
    F, fan = fan5
    assert len(fan) == 3
    c1, c2, c3 = (by_basis(fan, THREE_CELL, g) for g in (G1, G2, G3))
    assert {c.key for c in ev_region(fan)} == {c1.key, c2.key}
    assert c2.cone.boundary_class() is BoundaryClass.ORIGIN_ONLY
    assert set(sample_fan_keys(F)) == fan.keys()


def test_monomial_ideal_has_one_cell():
    fan = enumerate_fan([P(THREE_CELL, "x^2")])
    assert len(fan) == 1


def test_no_u_block_means_every_cell_eliminates():
    ctx = VariableContext(("x", "y"), ())
    fan = enumerate_fan([P(ctx, "x^2 - y"), P(ctx, "x*y - 1")])
    assert len(fan) > 1 and len(ev_region(fan)) == len(fan)


def test_nonconvex_fan(fan2):
    ctx, F, fan = fan2
    for listed in (G_SIGMA, G_TAU, G_OMEGA):
        by_basis(fan, ctx, listed)
    assert set(sample_fan_keys(F)) == fan.keys()
    ev = {c.key for c in ev_region(fan)}
    assert by_basis(fan, ctx, G_SIGMA).key in ev and by_basis(fan, ctx, G_TAU).key in ev
    assert by_basis(fan, ctx, G_OMEGA).key not in ev


def test_neighbourhood(fan5):
    _, fan = fan5
    assert len(neighbourhood(fan, (0, 0))) == 3
    assert len(neighbourhood(fan, (1, 5))) == 1
    # the ray shared by C1 and C2
    hit = neighbourhood(fan, (1, 1))
    assert {len(c.gb.polys) for c in hit} == {2, 3} and len(hit) == 2


def test_nonconvexity_witness(fan2):
    ctx, _, fan = fan2
    assert check_nonconvexity_witness(fan, (9, 12, 0), (9, 0, 10), (9, 6, 5))
    # all inside one elimination cone
    assert not check_nonconvexity_witness(fan, (9, 12, 0), (1, 12, 0), (5, 12, 0))
    assert not check_nonconvexity_witness(fan, (0, 2, 0), (0, 0, 2), (0, 1, 1))
    with pytest.raises(ValueError):
        check_nonconvexity_witness(fan, (9, 12, 0), (9, 0, 10), (1, 1, 1))


def test_star_shaped(fan5, fan2):
    for fan in (fan5[1], fan2[2]):
        rep = check_star_shaped(fan, n_samples=200, seed=42)
        assert rep.passed and rep.samples_tested == 200
        assert rep.points_tested == 200 * 6
        assert check_star_shaped(fan, n_samples=20, seed=7).to_record(fan.ctx) == check_star_shaped(
            fan, n_samples=20, seed=7
        ).to_record(fan.ctx)


def test_star_segment_from_sigma_to_u_face(fan2):
    ctx, _, fan = fan2
    sigma, tau = (9, 12, 0), (0, 0, 1)
    for k in range(33):
        t = Fraction(k, 32)
        assert is_ev(fan, [s + t * (u - s) for s, u in zip(sigma, tau)])


def test_dimension_guard():
    ctx = VariableContext(("a", "b", "c"), ("u", "v"))
    with pytest.raises(DimensionGuardError):
        enumerate_fan([P(ctx, "a - u")])
    assert len(enumerate_fan([P(ctx, "a - u")], max_dim=5)) == 2


def test_simplex_grid_counts():
    assert len(list(simplex_grid(2, 16))) == 17
    assert len(list(simplex_grid(3, 4))) == 15
    assert all(sum(p) == 4 for p in simplex_grid(3, 4))


def test_section_polygons(fan2):
    _, _, fan = fan2
    polys = section_polygons(fan)
    assert len(polys) == len(fan)
    for _, verts in polys:
        assert all(sum(v) == 1 for v in verts)


def test_cells_cover_orthant_and_interiors_are_disjoint(fan2):
    ctx, F, fan = fan2
    for w in simplex_grid(3, 12):
        assert neighbourhood(fan, w)
        assert sum(c.cone.interior_contains(w) for c in fan) <= 1


def test_interior_ev_iff_ieo(fan2):
    ctx, F, fan = fan2
    ev = {c.key for c in ev_region(fan)}
    for c in fan:
        w = c.cone.interior_point()
        assert c.cone.interior_contains(w)
        assert is_ev(fan, w) == (c.key in ev)
        assert reduced_gb(F, weight_order(w, ctx)).key() == c.key


def test_u_face_cells_are_elimination_cells(fan2):
    _, _, fan = fan2
    ev = {c.key for c in ev_region(fan)}
    for c in fan:
        if c.cone.meets_omega_u_strictly():
            assert c.key in ev


@settings(max_examples=15)
@given(ideals(max_gens=2))
def test_flip_enumeration_matches_grid(ideal):
    ctx, F = ideal
    assert cross_validate(F, steps=(16, 32)).agree
