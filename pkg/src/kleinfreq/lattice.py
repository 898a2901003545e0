"""Exact integer lattice geometry in dimensions 2 and 3.

Everything in this module is integer or rational arithmetic; no floating
point enters any predicate.  All objects are immutable values and all
operations are pure functions, so concurrent use needs no locking.

Conventions:

* integer length of a segment = gcd of the absolute coordinate differences
  (the number of lattice subsegments);
* integer area of a polygon = doubled Euclidean area, computed by the
  exact shoelace sum;
* integer distance of a lattice plane = the value of the primitive integer
  linear form defining the plane, normalised positive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DegenerateSegmentError,
    InvalidFaceError,
    InvalidMapError,
    InvalidPolygonError,
)

Vec2 = tuple
Vec3 = tuple


# ---------------------------------------------------------------------------
# small exact vector helpers


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def _primitive(vec):
    """Divide an integer vector by the gcd of its entries (gcd 0 stays 0)."""
    g = _gcd_all(vec)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(v // g for v in vec)


def integer_length(a, b):
    """Number of lattice subsegments of the segment ``ab``.

    Equals gcd of the absolute coordinate differences.  Raises
    DegenerateSegmentError when ``a == b``.
    """
    a = tuple(a)
    b = tuple(b)
    if a == b:
        raise DegenerateSegmentError(f"degenerate segment at {a}")
    return _gcd_all(_sub(b, a))


def _shoelace2(polygon):
    """Signed doubled area of a 2D polygon (exact)."""
    total = 0
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def _segments_properly_intersect(p1, p2, q1, q2):
    """Exact test: do the closed segments intersect outside shared endpoints?"""

    def orient(a, b, c):
        return _cross2(_sub(b, a), _sub(c, a))

    def on_segment(a, b, c):
        # c collinear with ab assumed; is c within the box of ab?
        return (
            min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
        )

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != d2 and d3 != d4:
        return True
    for a, b, c in ((q1, q2, p1), (q1, q2, p2), (p1, p2, q1), (p1, p2, q2)):
        if orient(a, b, c) == 0 and on_segment(a, b, c) and c not in (a, b):
            return True
    return False


def _validate_simple(polygon):
    n = len(polygon)
    if n < 3:
        raise InvalidPolygonError("polygon needs at least 3 vertices")
    if len(set(polygon)) != n:
        raise InvalidPolygonError("repeated vertex")
    edges = [(polygon[i], polygon[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share an endpoint
            if _segments_properly_intersect(*edges[i], *edges[j]):
                raise InvalidPolygonError("self-intersecting polygon")


def integer_area(polygon):
    """Doubled Euclidean area of a simple 2D lattice polygon (exact).

    Raises InvalidPolygonError for self-intersecting or degenerate input.
    """
    polygon = [tuple(p) for p in polygon]
    _validate_simple(polygon)
    area2 = abs(_shoelace2(polygon))
    if area2 == 0:
        raise InvalidPolygonError("polygon has zero area")
    return area2


def _convex_positions(points2):
    """Check a 2D vertex cycle is strictly convex with consistent orientation.

    Returns the common turn sign (+1 CCW, -1 CW).  Raises on collinear
    triples, mixed turn signs, or winding number != 1.
    """
    n = len(points2)
    sign = 0
    for i in range(n):
        a, b, c = points2[i], points2[(i + 1) % n], points2[(i + 2) % n]
        turn = _cross2(_sub(b, a), _sub(c, b))
        if turn == 0:
            raise InvalidPolygonError("collinear consecutive vertices")
        s = 1 if turn > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            raise InvalidPolygonError("non-convex vertex cycle")
    # all turns share a sign; a convex simple cycle winds exactly once, which
    # the edge directions certify by crossing the positive x-axis once
    dirs = [_sub(points2[(i + 1) % n], points2[i]) for i in range(n)]
    wraps = 0
    for i in range(n):
        d1, d2 = dirs[i], dirs[(i + 1) % n]
        if _cross2(d1, d2) * sign < 0:
            raise InvalidPolygonError("inconsistent turning")
        # count sign changes of the angle past the direction of d1 start
    # winding: accumulate quadrant steps exactly
    def quadrant(d):
        x, y = d
        if x > 0 and y >= 0:
            return 0
        if x <= 0 and y > 0:
            return 1
        if x < 0 and y <= 0:
            return 2
        return 3

    total = 0
    for i in range(n):
        q1, q2 = quadrant(dirs[i]), quadrant(dirs[(i + 1) % n])
        step = (q2 - q1) % 4 if sign > 0 else (q1 - q2) % 4
        if step == 3:
            raise InvalidPolygonError("inconsistent turning")
        total += step
        if step in (0, 2):
            # same or opposite quadrant: disambiguate with the cross product
            c = _cross2(dirs[i], dirs[(i + 1) % n])
            if step == 2 and c == 0:
                raise InvalidPolygonError("anti-parallel consecutive edges")
    if total != 4:
        raise InvalidPolygonError("vertex cycle winds more than once")
    return sign


# ---------------------------------------------------------------------------
# unimodular maps


@dataclass(frozen=True)
class UnimodularMap:
    """Integer matrix with determinant +-1, acting on lattice vectors."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n not in (2, 3) or any(len(r) != n for r in rows):
            raise InvalidMapError("matrix must be 2x2 or 3x3")
        if abs(self.det()) != 1:
            raise InvalidMapError(f"determinant {self.det()} is not +-1")

    @property
    def dim(self):
        return len(self.rows)

    def det(self):
        r = self.rows
        if len(r) == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def apply(self, v):
        return tuple(_dot(row, v) for row in self.rows)

    def compose(self, other):
        cols = list(zip(*other.rows))
        return UnimodularMap(
            tuple(tuple(_dot(row, col) for col in cols) for row in self.rows)
        )

    def inverse(self):
        d = self.det()
        r = self.rows
        if len(r) == 2:
            adj = ((r[1][1], -r[0][1]), (-r[1][0], r[0][0]))
        else:
            def cof(i, j):
                m = [
                    [r[a][b] for b in range(3) if b != j]
                    for a in range(3)
                    if a != i
                ]
                s = m[0][0] * m[1][1] - m[0][1] * m[1][0]
                return -s if (i + j) % 2 else s

            adj = tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))
        return UnimodularMap(tuple(tuple(x * d for x in row) for row in adj))

    @staticmethod
    def identity(dim=3):
        return UnimodularMap(
            tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
        )


def _ext_gcd(a, b):
    """Return (g, u, v) with u*a + v*b == g == gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def completion_matrix(normal):
    """Unimodular 3x3 map whose third row is the given primitive vector.

    For a lattice point ``x`` the image ``M.apply(x)`` has third coordinate
    ``normal . x``, so the map charts each plane ``normal . x = j`` onto
    the standard plane ``z = j``.
    """
    n1, n2, n3 = normal
    if _gcd_all(normal) != 1:
        raise ValueError("normal must be primitive")
    g = gcd(abs(n1), abs(n2))
    if g == 0:
        # normal is (0, 0, +-1)
        return UnimodularMap(((1, 0, 0), (0, 1, 0), (0, 0, n3)))
    p, q = n1 // g, n2 // g
    _, u, v = _ext_gcd(p, q)
    a = UnimodularMap(((v, -u, 0), (p, q, 0), (0, 0, 1)))
    _, s, t = _ext_gcd(g, n3)
    b = UnimodularMap(((1, 0, 0), (0, t, -s), (0, g, n3)))
    return b.compose(a)


# ---------------------------------------------------------------------------
# lattice faces


@dataclass(frozen=True)
class PlaneChart:
    """Affine-unimodular chart of a lattice plane onto the standard z = d plane.

    ``project`` keeps exact integers; ``lift`` inverts it at any offset, so
    slices of a cone between the origin and the plane can be enumerated in
    the same 2D coordinates.
    """

    matrix: UnimodularMap
    offset: int

    def project(self, p):
        r1, r2, _ = self.matrix.rows
        return (_dot(r1, p), _dot(r2, p))

    def lift(self, u, v, offset=None):
        j = self.offset if offset is None else offset
        inv = self.matrix.inverse()
        return inv.apply((u, v, j))

    def lift_fraction(self, u, v, offset=None):
        """Lift possibly non-integer chart coordinates (Fractions/floats)."""
        j = self.offset if offset is None else offset
        inv = self.matrix.inverse().rows
        return tuple(
            inv[i][0] * u + inv[i][1] * v + inv[i][2] * j for i in range(3)
        )


@dataclass(frozen=True)
class LatticeFace:
    """Convex lattice polygon in a plane of R^3 missing the origin.

    plane_normal is primitive and oriented so that plane_offset > 0.
    """

    vertices: tuple
    plane_normal: Vec3 = None
    plane_offset: int = None

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        if len(verts) < 3:
            raise InvalidFaceError("face needs at least 3 vertices")
        if any(len(v) != 3 for v in verts):
            raise InvalidFaceError("vertices must be 3D integer points")
        object.__setattr__(self, "vertices", verts)

        normal = None
        for i in range(1, len(verts) - 1):
            c = _cross3(_sub(verts[i], verts[0]), _sub(verts[i + 1], verts[0]))
            if c != (0, 0, 0):
                normal = c
                break
        if normal is None:
            raise InvalidFaceError("all vertices collinear")
        normal = _primitive(normal)
        offset = _dot(normal, verts[0])
        if any(_dot(normal, v) != offset for v in verts):
            raise InvalidFaceError("vertices are not coplanar")
        if offset == 0:
            raise InvalidFaceError("face plane passes through the origin")
        if offset < 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        object.__setattr__(self, "plane_normal", normal)
        object.__setattr__(self, "plane_offset", offset)

        # strict convexity and consistent orientation, checked in the chart
        try:
            _convex_positions(self.polygon2d())
        except InvalidPolygonError as exc:
            raise InvalidFaceError(str(exc)) from exc

    @property
    def chart(self):
        return PlaneChart(completion_matrix(self.plane_normal), self.plane_offset)

    def polygon2d(self):
        """Vertices in exact plane-lattice coordinates."""
        chart = self.chart
        return [chart.project(v) for v in self.vertices]

    def lattice_points2d(self):
        """All lattice points of the polygon (chart coordinates), sorted."""
        poly = self.polygon2d()
        xs = [p[0] for p in poly]
        ys = [p[1] for p in poly]
        sign = 1 if _shoelace2(poly) > 0 else -1
        points = []
        n = len(poly)
        for u in range(min(xs), max(xs) + 1):
            for v in range(min(ys), max(ys) + 1):
                inside = True
                for i in range(n):
                    a, b = poly[i], poly[(i + 1) % n]
                    if sign * _cross2(_sub(b, a), _sub((u, v), a)) < 0:
                        inside = False
                        break
                if inside:
                    points.append((u, v))
        return sorted(points)

    def integer_area2d(self):
        """Integer area of the face measured in its own plane lattice."""
        return integer_area(self.polygon2d())

    def translate2d(self, shift):
        """Face translated by an in-plane lattice vector given in chart coords."""
        chart = self.chart
        delta = _sub(chart.lift(*shift), chart.lift(0, 0))
        return LatticeFace(tuple(tuple(map(sum, zip(v, delta))) for v in self.vertices))

    def to_json(self):
        return json.dumps({"vertices": [list(v) for v in self.vertices]})

    @classmethod
    def from_json(cls, text):
        """Parse and validate the face JSON, reporting which invariant failed."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidFaceError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict) or "vertices" not in data:
            raise InvalidFaceError('missing "vertices" key')
        verts = data["vertices"]
        if not isinstance(verts, list):
            raise InvalidFaceError('"vertices" must be a list')
        for v in verts:
            if (
                not isinstance(v, list)
                or len(v) != 3
                or any(not isinstance(x, int) for x in v)
            ):
                raise InvalidFaceError(f"vertex {v!r} is not an integer 3-vector")
        return cls(tuple(tuple(v) for v in verts))


def integer_distance(face):
    """Integer distance from the origin to the face plane."""
    return face.plane_offset


def apply_unimodular(mapping, face):
    """Image of a face under a unimodular lattice map."""
    if mapping.dim != 3:
        raise InvalidMapError("faces live in dimension 3")
    return LatticeFace(tuple(mapping.apply(v) for v in face.vertices))


def face_from_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return LatticeFace.from_json(fh.read())


__all__ = [
    "Fraction",
    "LatticeFace",
    "PlaneChart",
    "UnimodularMap",
    "apply_unimodular",
    "completion_matrix",
    "face_from_path",
    "integer_area",
    "integer_distance",
    "integer_length",
]
