from fractions import Fraction as F

import pytest

from xcdof import errors
from xcdof.config import AntennaConfig
from xcdof.params import sum_dof
from xcdof.region import (
    achieve_corner,
    corner_points,
    enumerate_vertices,
    is_vertex,
    region_inequalities,
    region_symmetric,
    satisfies,
    verify_region,
)
from xcdof.scheme import achieved_tuple, check_decodability, execute_plan


def frac4(t):
    return tuple(F(x) for x in t)


# -- inequality families -------------------------------------------------------------


def test_regime1_weighted_sum_binds():
    # (M,N) = (3,1): the half-rate cross bound is the binding family
    ineqs = region_inequalities(3, 1)
    assert (frac4((1, 1, F(1, 2), F(1, 2))), F(1)) in ineqs
    # pair bound present: d_ij + d_i'j <= 1
    assert (frac4((1, 0, F(1, 2), 0)), F(1)) in ineqs


def test_regime2_coefficients():
    ineqs = region_inequalities(3, 2)
    assert (frac4((1, 1, F(5, 9), F(5, 9))), F(2)) in ineqs  # 1/gamma = (M+N)/3M
    assert (frac4((1, 1, F(2, 3), 0)), F(2)) in ineqs  # N/M cross bound


def test_regime5_reduces_to_pair_bounds():
    # (M,N) = (1,3): every constraint is implied by d_ij + d_i'j <= M
    ineqs = region_inequalities(1, 3)
    pair = [(frac4((1, 0, 1, 0)), F(1)), (frac4((0, 1, 0, 1)), F(1))]
    for coeffs, rhs in pair:
        assert (coeffs, rhs) in ineqs
    verts = enumerate_vertices(ineqs)
    doubles = [v for v in verts if sum(v) == 2]
    assert sorted(doubles) == sorted(
        [frac4(t) for t in [(0, 0, 1, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 0)]]
    )


# -- corner lists ---------------------------------------------------------------------


def test_corner_counts_by_regime():
    assert len(corner_points(3, 1)) == 8
    assert len(corner_points(3, 2)) == 12
    assert len(corner_points(4, 5)) == 16  # all listed tuples are distinct vertices
    assert len(corner_points(3, 4)) == 13  # scheme tuples coincide at N/M = 4/3
    assert len(corner_points(2, 3)) == 13
    assert len(corner_points(1, 3)) == 4


def test_corner_examples():
    assert frac4((F(15, 14), F(3, 14), F(15, 14), F(3, 14))) in corner_points(3, 2)
    assert frac4((F(6, 5),) * 4) in corner_points(3, 4)
    assert sorted(corner_points(1, 3)) == sorted(
        frac4(t) for t in [(0, 0, 1, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 0)]
    )


def test_boundary_degeneracies_dropped():
    # N == M: cross pairs are midpoints of singletons
    pts = corner_points(2, 2)
    assert frac4((1, 0, 1, 0)) not in pts and len(pts) == 8
    # N == 2M: the all-equal tuple is an average of merged MAC corners
    pts = corner_points(1, 2)
    assert frac4((F(1, 2),) * 4) not in pts and len(pts) == 8
    for p in pts:
        assert is_vertex(region_inequalities(1, 2), p)


# -- verification ----------------------------------------------------------------------


@pytest.mark.parametrize("m,n", [(3, 1), (3, 2), (3, 4), (2, 3), (1, 3), (4, 5)])
def test_published_corners_are_feasible_vertices(m, n):
    rep = verify_region(m, n)
    assert rep.infeasible == [] and rep.non_vertex == []
    assert rep.extra == []  # enumeration finds every published corner
    assert rep.max_corner_sum == sum_dof(AntennaConfig(m, m, n, n))


def test_regime1_enumeration_exact():
    # the one regime whose published list is the complete vertex set
    rep = verify_region(3, 1)
    assert rep.missing == [] and rep.ok


def test_documented_unpublished_vertices():
    """The printed inequality systems of regimes 2-4 have extreme points
    beyond the published corner lists; they are genuine vertices."""
    rep = verify_region(3, 2)
    assert len(rep.missing) == 8
    ineqs = region_inequalities(3, 2)
    sample = frac4((0, F(24, 17), F(3, 17), F(15, 17)))
    assert sample in rep.missing
    assert satisfies(ineqs, sample) and is_vertex(ineqs, sample)


def test_region_container():
    reg = region_symmetric(3, 2)
    assert reg.regime == 2
    assert all(satisfies(reg.inequalities, c) for c in reg.corners)


# -- achievability -------------------------------------------------------------------


def test_achieve_corner_classification():
    assert achieve_corner(3, 1, frac4((F(2, 3), 0, F(2, 3), 0))).kind == "bc"
    assert achieve_corner(3, 1, frac4((0, F(2, 3), F(2, 3), 0))).leads == (2, 1)
    assert achieve_corner(3, 4, frac4((3, 1, 0, 0))).kind == "mac"
    assert achieve_corner(1, 3, frac4((1, 1, 0, 0))).kind == "zero_csit"
    assert achieve_corner(3, 2, frac4((0, 2, 0, 0))).kind == "p2p"
    plan = achieve_corner(3, 2, frac4((F(15, 14), F(3, 14), F(15, 14), F(3, 14))))
    assert plan.kind == "full_scheme" and plan.leads == (1, 1)
    with pytest.raises(errors.UnknownCorner):
        achieve_corner(3, 2, frac4((1, 1, 1, 1)))


@pytest.mark.parametrize("m,n", [(3, 1), (3, 2), (3, 4), (2, 3), (1, 3)])
def test_every_corner_executes_exactly(m, n):
    for corner in corner_points(m, n):
        plan = achieve_corner(m, n, corner)
        t = execute_plan(m, n, plan, seed=11)
        assert achieved_tuple(t) == tuple(corner), (corner, plan)
        assert check_decodability(t).all_pass, (corner, plan)
