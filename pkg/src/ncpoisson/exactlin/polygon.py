"""Lattice polygons: Newton polygon of a bivariate polynomial, interior and
boundary lattice point counts, Pick's-theorem consistency.

Degenerate supports are kept: a single monomial gives a one-vertex polygon,
a collinear support gives a two-vertex segment; both have zero interior.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .mpoly import MPoly


class ZeroPolynomialError(ValueError):
    """Newton polygon of the zero polynomial is undefined."""


Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon; vertices counterclockwise, starting from the
    lexicographically smallest, no three collinear."""

    vertices: tuple[Point, ...]

    def area2(self) -> int:
        """Twice the enclosed area (shoelace); 0 for degenerate polygons."""
        v = self.vertices
        if len(v) < 3:
            return 0
        return sum(
            v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1]
            for i in range(len(v))
        )

    def boundary_points(self) -> int:
        v = self.vertices
        if len(v) == 1:
            return 1
        if len(v) == 2:
            (x0, y0), (x1, y1) = v
            return gcd(abs(x1 - x0), abs(y1 - y0)) + 1
        return sum(
            gcd(
                abs(v[(i + 1) % len(v)][0] - v[i][0]),
                abs(v[(i + 1) % len(v)][1] - v[i][1]),
            )
            for i in range(len(v))
        )

    def contains_strictly(self, p: Point) -> bool:
        v = self.vertices
        if len(v) < 3:
            return False
        return all(
            _cross(v[i], v[(i + 1) % len(v)], p) > 0 for i in range(len(v))
        )

    def interior_points(self) -> int:
        v = self.vertices
        if len(v) < 3:
            return 0
        xs = [p[0] for p in v]
        ys = [p[1] for p in v]
        count = 0
        for x in range(min(xs) + 1, max(xs)):
            for y in range(min(ys) + 1, max(ys)):
                if self.contains_strictly((x, y)):
                    count += 1
        return count

    def pick_consistent(self) -> bool:
        """2*Area = 2*I + B - 2 (trivially true only for nondegenerate hulls)."""
        if len(self.vertices) < 3:
            return True
        return self.area2() == 2 * self.interior_points() + self.boundary_points() - 2

    def json_vertices(self) -> list[list[int]]:
        return [[x, y] for x, y in self.vertices]


def convex_hull(points) -> LatticePolygon:
    """Monotone-chain hull, strictly convex, CCW from the smallest vertex."""
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if not pts:
        raise ValueError("empty point set")
    if len(pts) == 1:
        return LatticePolygon((pts[0],))
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    # collinear input collapses to the two extreme points
    if len(hull) < 2:
        lo, hi = pts[0], pts[-1]
        return LatticePolygon((lo,) if lo == hi else (lo, hi))
    return LatticePolygon(tuple(hull))


def newton_polygon(p: MPoly) -> LatticePolygon:
    """Convex hull of the exponent support of a polynomial in two variables."""
    if p.nvars != 2:
        raise ValueError("Newton polygon needs a polynomial in exactly 2 variables")
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial has no Newton polygon")
    return convex_hull(p.support())


def interior_lattice_points(poly: LatticePolygon) -> int:
    return poly.interior_points()
