"""Planar geometry primitives: polygons, hulls, line sweeps, rigid transforms.

Everything here is immutable and pure; coordinates are meters in a local
Cartesian frame. `EPS_GEOM` is the coincidence tolerance used for merging
points, boundary classification and degeneracy checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels

EPS_GEOM = 1e-9


class DegeneratePolygon(ValueError):
    """Fewer than 3 distinct vertices, zero area, or a self-intersection."""


class Point(NamedTuple):
    x: float
    y: float


class PointLocation(Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INSIDE = "inside"


_LOCATION_BY_CODE = {
    _kernels.OUTSIDE: PointLocation.OUTSIDE,
    _kernels.BOUNDARY: PointLocation.BOUNDARY,
    _kernels.INSIDE: PointLocation.INSIDE,
}


def _as_points(values: Iterable[Sequence[float]]) -> tuple[Point, ...]:
    pts = []
    for v in values:
        p = Point(float(v[0]), float(v[1]))
        if not (math.isfinite(p.x) and math.isfinite(p.y)):
            raise DegeneratePolygon(f"non-finite vertex {v!r}")
        pts.append(p)
    return tuple(pts)


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _segments_intersect(p1, p2, q1, q2, eps=EPS_GEOM) -> bool:
    """True if closed segments p1p2 and q1q2 share any point (eps-padded)."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True

    def on_segment(a, b, c):
        if abs(_cross(a, b, c)) > eps * max(1.0, abs(a.x), abs(a.y), abs(b.x), abs(b.y)):
            return False
        return (
            min(a.x, b.x) - eps <= c.x <= max(a.x, b.x) + eps
            and min(a.y, b.y) - eps <= c.y <= max(a.y, b.y) + eps
        )

    return (
        on_segment(q1, q2, p1)
        or on_segment(q1, q2, p2)
        or on_segment(p1, p2, q1)
        or on_segment(p1, p2, q2)
    )


class Polygon:
    """Simple polygon stored counter-clockwise.

    Construction validates: at least 3 vertices after dropping consecutive
    near-duplicates, positive area, no self-intersection. Clockwise input is
    reversed. Instances are immutable.
    """

    __slots__ = ("vertices", "_array")

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable[Sequence[float]]):
        pts = list(_as_points(vertices))
        # drop a repeated closing vertex and consecutive near-duplicates
        cleaned: list[Point] = []
        for p in pts:
            if cleaned and math.dist(p, cleaned[-1]) <= EPS_GEOM:
                continue
            cleaned.append(p)
        while len(cleaned) >= 2 and math.dist(cleaned[0], cleaned[-1]) <= EPS_GEOM:
            cleaned.pop()
        if len(cleaned) < 3:
            raise DegeneratePolygon("need at least 3 distinct vertices")

        area2 = _signed_area2(cleaned)
        if abs(area2) <= EPS_GEOM:
            raise DegeneratePolygon("polygon has zero area")
        if area2 < 0.0:
            cleaned.reverse()

        n = len(cleaned)
        for i in range(n):
            a1, a2 = cleaned[i], cleaned[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue  # adjacent edges share a vertex by design
                b1, b2 = cleaned[j], cleaned[(j + 1) % n]
                if _segments_intersect(a1, a2, b1, b2):
                    raise DegeneratePolygon(
                        f"self-intersection between edges {i} and {j}"
                    )

        object.__setattr__(self, "vertices", tuple(cleaned))
        arr = np.array(cleaned, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "_array", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Polygon is immutable")

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Polygon({list(self.vertices)!r})"

    def as_array(self) -> np.ndarray:
        """Read-only (n, 2) float64 view of the vertices."""
        return self._array

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def bounds(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y)."""
        xs = self._array[:, 0]
        ys = self._array[:, 1]
        return float(xs.min()), float(ys.min()), float(xs.max()), float(ys.max())

    def is_convex(self) -> bool:
        v = self.vertices
        n = len(v)
        return all(
            _cross(v[i], v[(i + 1) % n], v[(i + 2) % n]) >= -EPS_GEOM for i in range(n)
        )


def _signed_area2(pts: Sequence[Point]) -> float:
    acc = 0.0
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        acc += a.x * b.y - b.x * a.y
    return acc


def validate_and_orient(vertices: Iterable[Sequence[float]]) -> Polygon:
    """Build a CCW simple polygon from raw coordinate pairs."""
    return Polygon(vertices)


def polygon_area(p: Polygon) -> float:
    """Enclosed area in square meters (positive; vertices are CCW)."""
    return 0.5 * _signed_area2(p.vertices)


def longest_edge(p: Polygon) -> int:
    """Index of the longest edge; ties go to the lowest index."""
    best = 0
    best_len = -1.0
    for i, (a, b) in enumerate(p.edges()):
        d2 = (b.x - a.x) ** 2 + (b.y - a.y) ** 2
        if d2 > best_len:
            best_len = d2
            best = i
    return best


@dataclass(frozen=True)
class AffineTransform:
    """Rigid map `p -> R(angle) @ p + translation` (rotation then shift).

    Rotation is by `angle` radians counter-clockwise, so the 2x2 matrix is
    orthonormal with determinant +1. `invert` gives the exact inverse map;
    apply-then-invert round-trips within 1e-9.
    """

    angle: float
    translation: tuple[float, float]

    @staticmethod
    def identity() -> "AffineTransform":
        return AffineTransform(0.0, (0.0, 0.0))

    @property
    def rotation(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    def apply(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return pts @ self.rotation.T + np.asarray(self.translation)

    def apply_point(self, p: Sequence[float]) -> Point:
        x, y = self.apply([p])[0]
        return Point(float(x), float(y))

    def invert(self) -> "AffineTransform":
        c, s = math.cos(self.angle), math.sin(self.angle)
        tx, ty = self.translation
        # inverse of p' = R p + t  is  p = R^T p' - R^T t
        return AffineTransform(-self.angle, (-(c * tx + s * ty), -(-s * tx + c * ty)))


def normalize(p: Polygon) -> tuple[Polygon, AffineTransform]:
    """Rotate/translate so the longest edge lies on y=0 with the interior above.

    The returned transform maps original coordinates to the normalized frame;
    x is additionally shifted so the leftmost vertex sits at x=0. For convex
    input every vertex ends up in the first quadrant.
    """
    edge = longest_edge(p)
    a = p.vertices[edge]
    b = p.vertices[(edge + 1) % len(p)]
    # CCW storage puts the interior to the left of a->b, i.e. above after
    # rotating the directed edge onto +x
    angle = -math.atan2(b.y - a.y, b.x - a.x)
    rotated = AffineTransform(angle, (0.0, 0.0)).apply(p.as_array())
    ty = -rotated[edge, 1]
    tx = -float(rotated[:, 0].min())
    transform = AffineTransform(angle, (tx, ty))
    return Polygon(transform.apply(p.as_array())), transform


def horizontal_intersections(p: Polygon, y: float) -> list[Point]:
    """Boundary points on the line Y=y, sorted by x, eps-merged.

    An edge collinear with the line contributes both endpoints.
    """
    hits: list[float] = []
    for a, b in p.edges():
        if abs(a.y - y) <= EPS_GEOM and abs(b.y - y) <= EPS_GEOM:
            hits.append(a.x)
            hits.append(b.x)
        elif min(a.y, b.y) - EPS_GEOM <= y <= max(a.y, b.y) + EPS_GEOM:
            if abs(b.y - a.y) > EPS_GEOM:
                t = (y - a.y) / (b.y - a.y)
                t = min(1.0, max(0.0, t))
                hits.append(a.x + t * (b.x - a.x))
    hits.sort()
    merged: list[Point] = []
    for x in hits:
        if not merged or x - merged[-1].x > EPS_GEOM:
            merged.append(Point(x, y))
    return merged


def vertices_in_band(p: Polygon, y_bottom: float, y_top: float) -> list[Point]:
    """Vertices with y strictly inside the open band (y_bottom, y_top).

    Vertices within EPS_GEOM of either line are excluded; those are already
    reported by `horizontal_intersections` on the line itself.
    """
    if not y_bottom < y_top:
        raise ValueError("empty band: y_bottom must be below y_top")
    return [
        v for v in p.vertices if y_bottom + EPS_GEOM < v.y < y_top - EPS_GEOM
    ]


def convex_hull(p: Polygon) -> Polygon:
    """CCW convex hull of the polygon's vertices (collinear points dropped)."""
    pts = sorted(set(p.vertices))
    if len(pts) < 3:
        raise DegeneratePolygon("hull needs at least 3 distinct vertices")

    def half(points):
        chain: list[Point] = []
        for q in points:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], q) <= EPS_GEOM:
                chain.pop()
            chain.append(q)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    return Polygon(lower[:-1] + upper[:-1])


def point_in_polygon(p: Polygon, pt: Sequence[float]) -> PointLocation:
    """Even-odd classification with an EPS_GEOM boundary band."""
    code = _kernels.classify_points(
        p.as_array(), np.asarray([pt], dtype=np.float64), EPS_GEOM
    )[0]
    return _LOCATION_BY_CODE[int(code)]


def classify_many(p: Polygon, points, eps: float = EPS_GEOM) -> np.ndarray:
    """Vectorized `point_in_polygon`: uint8 codes 0=out, 1=boundary, 2=in."""
    return _kernels.classify_points(
        p.as_array(), np.asarray(points, dtype=np.float64), eps
    )


def clip_to_convex(subject: Sequence[Point], clip: Sequence[Point]) -> list[Point]:
    """Sutherland-Hodgman clip of a polygon by a convex CCW window."""
    output = list(subject)
    n = len(clip)
    for i in range(n):
        a = clip[i]
        b = clip[(i + 1) % n]
        if not output:
            break
        inputs = output
        output = []
        prev = inputs[-1]
        prev_in = _cross(a, b, prev) >= -EPS_GEOM
        for cur in inputs:
            cur_in = _cross(a, b, cur) >= -EPS_GEOM
            if cur_in != prev_in:
                # edge crosses the clip line; intersect prev->cur with a->b
                dx1, dy1 = cur[0] - prev[0], cur[1] - prev[1]
                dx2, dy2 = b.x - a.x, b.y - a.y
                denom = dx1 * dy2 - dy1 * dx2
                if abs(denom) > EPS_GEOM:
                    t = ((a.x - prev[0]) * dy2 - (a.y - prev[1]) * dx2) / denom
                    output.append(
                        Point(prev[0] + t * dx1, prev[1] + t * dy1)
                    )
            if cur_in:
                output.append(cur)
            prev, prev_in = cur, cur_in
    return output


def intersection_area_with_rect(
    p: Polygon, x0: float, y0: float, x1: float, y1: float
) -> float:
    """Area of polygon ∩ axis-aligned rectangle [x0,x1] x [y0,y1]."""
    rect = [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]
    clipped = clip_to_convex(p.vertices, rect)
    if len(clipped) < 3:
        return 0.0
    return abs(0.5 * _signed_area2(clipped))
