import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncpoisson.exactlin import (
    MPoly,
    ZeroPolynomialError,
    convex_hull,
    interior_lattice_points,
    newton_polygon,
)


def _poly2(support):
    return MPoly(2, {e: 1 for e in support})


def test_fermat_cubic_triangle():
    p = _poly2([(3, 0), (0, 3), (0, 0)])
    hull = newton_polygon(p)
    assert hull.vertices == ((0, 0), (3, 0), (0, 3))
    assert interior_lattice_points(hull) == 1


def test_single_monomial_degenerate():
    hull = newton_polygon(_poly2([(1, 1)]))
    assert hull.vertices == ((1, 1),)
    assert interior_lattice_points(hull) == 0
    assert hull.boundary_points() == 1


def test_segment_degenerate():
    hull = newton_polygon(_poly2([(0, 0), (2, 2), (1, 1)]))
    assert hull.vertices == ((0, 0), (2, 2))
    assert interior_lattice_points(hull) == 0
    assert hull.boundary_points() == 3


def test_unit_triangle_empty_interior():
    hull = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert interior_lattice_points(hull) == 0


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomialError):
        newton_polygon(MPoly.zero(2))


def test_hull_starts_at_lex_smallest_and_ccw():
    hull = convex_hull([(2, 0), (0, 2), (2, 2), (0, 0), (1, 1)])
    assert hull.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))
    # counterclockwise: positive shoelace
    assert hull.area2() == 8


def test_json_export_roundtrip():
    hull = convex_hull([(0, 0), (3, 0), (0, 3)])
    blob = json.dumps(hull.json_vertices())
    assert json.loads(blob) == [[0, 0], [3, 0], [0, 3]]


points = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


@settings(max_examples=120, deadline=None)
@given(st.lists(points, min_size=1, max_size=12))
def test_pick_consistency_on_random_hulls(pts):
    hull = convex_hull(pts)
    assert hull.pick_consistent()


@settings(max_examples=80, deadline=None)
@given(st.lists(points, min_size=3, max_size=12))
def test_interior_count_matches_pick(pts):
    hull = convex_hull(pts)
    if len(hull.vertices) < 3:
        assert hull.interior_points() == 0
        return
    # Pick: A = I + B/2 - 1
    assert hull.area2() == 2 * hull.interior_points() + hull.boundary_points() - 2
