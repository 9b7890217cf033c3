"""Lattice polygons: Newton polygons of trinomials and interior point counts."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class LatticePolygon:
    vertices: tuple[tuple[int, int], ...]

    @property
    def twice_area(self) -> int:
        """Signed shoelace sum (positive for counter-clockwise order)."""
        vs = self.vertices
        n = len(vs)
        return sum(vs[i][0] * vs[(i + 1) % n][1] - vs[(i + 1) % n][0] * vs[i][1] for i in range(n))

    @property
    def boundary_points(self) -> int:
        vs = self.vertices
        n = len(vs)
        return sum(math.gcd(vs[i][0] - vs[(i + 1) % n][0], vs[i][1] - vs[(i + 1) % n][1])
                   for i in range(n))

    def oriented(self) -> LatticePolygon:
        if self.twice_area < 0:
            return LatticePolygon(tuple(reversed(self.vertices)))
        return self


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segments_cross(p1, p2, p3, p4) -> bool:
    d1, d2 = _cross(p3, p4, p1), _cross(p3, p4, p2)
    d3, d4 = _cross(p1, p2, p3), _cross(p1, p2, p4)
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True

    def on(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    return ((d1 == 0 and on(p3, p4, p1)) or (d2 == 0 and on(p3, p4, p2))
            or (d3 == 0 and on(p1, p2, p3)) or (d4 == 0 and on(p1, p2, p4)))


def is_simple(P: LatticePolygon) -> bool:
    vs = P.vertices
    n = len(vs)
    if len(set(vs)) != n:
        return False
    if n <= 3:
        return True
    edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_cross(*edges[i], *edges[j]):
                return False
    return True


def interior_points(P: LatticePolygon) -> int:
    """Interior lattice points from the vertex list via Pick's theorem.

    Collinear (zero-area) inputs have no interior and return 0.
    """
    if len(P.vertices) < 3 or P.twice_area == 0 and _collinear(P.vertices):
        return 0
    if not is_simple(P):
        raise DomainError(f"polygon {P.vertices} is not simple")
    P = P.oriented()
    vs = P.vertices
    n = len(vs)
    total = 0
    for i in range(n):
        (a0, b0), (a1, b1) = vs[i], vs[(i + 1) % n]
        total += a0 * b1 - a1 * b0 - math.gcd(a0 - a1, b0 - b1)
    return 1 + total // 2


def _collinear(vs) -> bool:
    return all(_cross(vs[0], vs[1], v) == 0 for v in vs[2:])


def interior_points_brute(P: LatticePolygon) -> int:
    """Count interior lattice points by testing every point of the bounding box."""
    vs = P.oriented().vertices
    if len(vs) < 3 or _collinear(vs):
        return 0
    xs = [v[0] for v in vs]
    ys = [v[1] for v in vs]
    n = len(vs)
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if all(_cross(vs[i], vs[(i + 1) % n], (x, y)) > 0 for i in range(n)):
                count += 1
    return count


def convex_hull(points) -> list[tuple[int, int]]:
    """Counter-clockwise hull (Andrew's monotone chain), collinear points dropped."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def newton_polygon(exponents) -> LatticePolygon:
    return LatticePolygon(tuple(convex_hull(exponents)))


def i_of_curve(cf) -> int:
    """Interior point count of a classified trinomial, from its case's closed form."""
    g = math.gcd
    c, P = cf.case_id, cf.params
    if c == 1:
        m, n = P
        return ((m - 1) * (n - 1) - (g(m, n) - 1)) // 2
    if c == 2:
        m, n1, n = P
        return ((m - 1) * (n - n1) - g(m, n1) - g(m, n)) // 2 + 1
    if c == 3:
        m1, n1, n = P
        return ((m1 - 1) * n - g(m1, n1) - g(m1, n - n1)) // 2 + 1
    if c == 4:
        m1, n1, m, n = P
        return (m * n1 - m1 * n - g(m1, n1) - g(m, n) - g(n1 - n, m1 - m)) // 2 + 1
    if c == 5:
        m1, n1, m, n = P
        return (m1 * n + m * n1 - m * n - g(m1, n1 - n) - g(n1, m1 - m) - g(m, n)) // 2 + 1
    raise DomainError(f"unknown case {c}")
