"""Reproducible random convex polygons for benchmarks and batch comparisons.

Vertices are sampled on an ellipse, which guarantees convex position, so
the vertex count is exact and the hull step never drops points.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import Polygon

_MIN_ANGLE_GAP = 0.05  # radians; keeps sampled vertices well separated


def random_convex_polygon(
    rng: np.random.Generator,
    n_vertices: int | None = None,
    diameter: float | None = None,
) -> Polygon:
    """Convex polygon with `n_vertices` corners and major axis `diameter` meters.

    Defaults draw 5-12 vertices and a 300-1500 m diameter from `rng`; the
    ellipse gets a random aspect ratio, orientation and offset.
    """
    if n_vertices is None:
        n_vertices = int(rng.integers(5, 13))
    if n_vertices < 3:
        raise ValueError("need at least 3 vertices")
    if diameter is None:
        diameter = float(rng.uniform(300.0, 1500.0))
    semi_major = diameter / 2.0
    semi_minor = semi_major * float(rng.uniform(0.4, 1.0))
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n_vertices))
        gaps = np.diff(angles, append=angles[0] + 2.0 * math.pi)
        if gaps.min() > _MIN_ANGLE_GAP:
            break
    tilt = float(rng.uniform(0.0, 2.0 * math.pi))
    offset = rng.uniform(0.0, 2000.0, 2)
    xs = semi_major * np.cos(angles)
    ys = semi_minor * np.sin(angles)
    cos_t, sin_t = math.cos(tilt), math.sin(tilt)
    pts = np.column_stack(
        [xs * cos_t - ys * sin_t + offset[0], xs * sin_t + ys * cos_t + offset[1]]
    )
    return Polygon(pts)
