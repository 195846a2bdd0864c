"""Grid decomposition of polygonal search areas under a camera-footprint limit.

Two methods are provided. `agd_decompose` sweeps the polygon bottom-up in
horizontal channels and shrinks the cell edge per channel so a whole number
of cells exactly spans it; the shrink is traded for extra cell height while
keeping every cell inscribed in the footprint circle of radius r. An
axis-aligned cell of width w and height h is admissible iff w^2 + h^2 <= (2r)^2.
`sgd_decompose` is the uniform baseline: a fixed grid of sqrt(2)*r squares,
keeping cells that overlap the polygon.

Both work in a normalized frame (longest polygon edge on y=0, see
`geometry.normalize`) and report cell centers in the original frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .geometry import (
    EPS_GEOM,
    AffineTransform,
    Point,
    Polygon,
    convex_hull,
    horizontal_intersections,
    intersection_area_with_rect,
    normalize,
    vertices_in_band,
)

# a rectangle/polygon overlap below this area (m^2) counts as no overlap
AREA_EPS = 1e-9


class NonPositiveRadius(ValueError):
    """Footprint radius must be a positive finite number."""


class UnsupportedPolygon(ValueError):
    """Direct sweep of a non-convex polygon whose longest edge does not
    support it (vertices fall below the sweep origin)."""


def cell_edge(radius: float) -> float:
    """Edge of the largest square inscribed in a circle of the given radius."""
    return math.sqrt(2.0) * radius


class Cell(NamedTuple):
    """Axis-aligned rectangle in the normalized frame.

    `center` is expressed in original coordinates; width (x-extent) and
    height (y-extent) refer to the normalized frame carried by the owning
    decomposition.
    """

    center: Point
    width: float
    height: float


@dataclass(frozen=True)
class ChannelTrace:
    """Per-channel record of the adaptive sweep, in normalized coordinates.

    `span` is x_max - x_min over the channel's boundary/vertex points,
    `count` the number of cells, `excess = count * sqrt(2) r - span`,
    `delta = excess / count` the per-cell width shrink, and `y_top_adj`
    the raised channel top after trading shrink for height.
    """

    y_bottom: float
    y_top: float
    y_top_adj: float
    span: float
    count: int
    excess: float
    delta: float
    x_min: float
    x_max: float


@dataclass(frozen=True)
class Decomposition:
    """Ordered cell set covering a polygon, plus the sweep trace.

    Cells are ordered channel-major bottom-up, left-to-right inside a
    channel, so index 0 is bottom-left and index len-1 top-right. `transform`
    maps original coordinates into the normalized frame the cells are
    axis-aligned in; `polygon` is the search area the grid was built for.
    """

    cells: tuple[Cell, ...]
    channels: tuple[ChannelTrace, ...]
    method: str  # "agd" | "sgd"
    radius: float
    transform: AffineTransform
    polygon: Polygon
    hull_used: bool = False

    def centers_array(self) -> np.ndarray:
        """(k, 2) cell centers in original coordinates."""
        return np.array([c.center for c in self.cells], dtype=np.float64)

    def normalized_cell_bounds(self) -> np.ndarray:
        """(k, 4) rows of (center_x, center_y, half_w, half_h), normalized frame."""
        if not self.cells:
            return np.zeros((0, 4))
        centers = self.transform.apply(self.centers_array())
        half = np.array([(c.width / 2.0, c.height / 2.0) for c in self.cells])
        return np.hstack([centers, half])


def _check_radius(radius: float) -> None:
    if not (isinstance(radius, (int, float)) and math.isfinite(radius) and radius > 0):
        raise NonPositiveRadius(f"footprint radius must be > 0, got {radius!r}")


def _sweep_channels(poly, radius: float) -> tuple[list[ChannelTrace], list[tuple[float, float, float, float]]]:
    """Run the adaptive channel sweep over a normalized polygon.

    Returns channel traces and normalized cells as (cx, cy, w, h) tuples.
    `poly` only needs `edges()` and `vertices`, which keeps the sweep
    testable on raw vertex fixtures.
    """
    s = cell_edge(radius)
    y_max = max(v.y for v in poly.vertices)
    y_b = 0.0
    traces: list[ChannelTrace] = []
    cells: list[tuple[float, float, float, float]] = []
    while y_max - y_b > EPS_GEOM:
        y_t = y_b + s
        pts = horizontal_intersections(poly, y_b)
        pts += horizontal_intersections(poly, y_t)
        pts += vertices_in_band(poly, y_b, y_t)
        if pts:
            x_min = min(p.x for p in pts)
            x_max = max(p.x for p in pts)
        else:
            x_min = x_max = 0.0
        span = x_max - x_min
        if span < EPS_GEOM:
            # a lone touching point (or nothing) spans no width; emit no
            # cells and move on by one unadjusted channel height
            traces.append(
                ChannelTrace(y_b, y_t, y_t, span, 0, 0.0, 0.0, x_min, x_max)
            )
            y_b = y_t
            continue
        count = max(1, math.ceil(span / s - 1e-9))
        excess = s * count - span
        delta = excess / count
        width = s - delta
        height = math.sqrt(2.0 * radius * radius + 2.0 * s * delta - delta * delta)
        y_t_adj = y_b + height
        traces.append(
            ChannelTrace(y_b, y_t, y_t_adj, span, count, excess, delta, x_min, x_max)
        )
        cy = y_b + height / 2.0
        for k in range(count):
            cells.append((x_min + width / 2.0 + k * width, cy, width, height))
        y_b = y_t_adj
    return traces, cells


def agd_decompose(
    p: Polygon, radius: float, *, allow_nonconvex: bool = False
) -> Decomposition:
    """Adaptive channel decomposition of a polygon.

    Non-convex polygons are decomposed via their convex hull with cells that
    miss the original shape pruned afterwards. With `allow_nonconvex` the
    sweep runs on the polygon itself (channel span covers any concavity gap);
    this requires the longest edge to support the polygon and skips pruning.
    """
    _check_radius(radius)
    hull_used = False
    work = p
    if not p.is_convex():
        if not allow_nonconvex:
            work = convex_hull(p)
            hull_used = True
    normalized, transform = normalize(work)
    if min(v.y for v in normalized.vertices) < -EPS_GEOM:
        raise UnsupportedPolygon(
            "polygon extends below its longest edge; decompose via the convex hull"
        )
    traces, raw_cells = _sweep_channels(normalized, radius)
    inverse = transform.invert()
    cells = tuple(
        Cell(inverse.apply_point((cx, cy)), w, h) for cx, cy, w, h in raw_cells
    )
    d = Decomposition(
        cells=cells,
        channels=tuple(traces),
        method="agd",
        radius=float(radius),
        transform=transform,
        polygon=p,
        hull_used=hull_used,
    )
    if hull_used:
        d = prune_outside_cells(d, p)
    return d


def sgd_decompose(p: Polygon, radius: float) -> Decomposition:
    """Uniform baseline: overlay a grid of sqrt(2)*r squares on the polygon.

    Grid lines sit at integer multiples of the edge length in the normalized
    frame (bottom row on the x-axis, leftmost column at the leftmost vertex);
    a cell is kept iff it overlaps the polygon with positive area.
    """
    _check_radius(radius)
    s = cell_edge(radius)
    normalized, transform = normalize(p)
    min_x, min_y, max_x, max_y = normalized.bounds()
    j0 = math.floor(min_x / s + 1e-12)
    j1 = math.ceil(max_x / s - 1e-12)
    i0 = math.floor(min_y / s + 1e-12)
    i1 = math.ceil(max_y / s - 1e-12)
    inverse = transform.invert()
    cells = []
    for i in range(i0, i1):
        for j in range(j0, j1):
            x0, y0 = j * s, i * s
            if intersection_area_with_rect(normalized, x0, y0, x0 + s, y0 + s) > AREA_EPS:
                center = inverse.apply_point((x0 + s / 2.0, y0 + s / 2.0))
                cells.append(Cell(center, s, s))
    return Decomposition(
        cells=tuple(cells),
        channels=(),
        method="sgd",
        radius=float(radius),
        transform=transform,
        polygon=p,
        hull_used=False,
    )


def prune_outside_cells(d: Decomposition, original: Polygon) -> Decomposition:
    """Drop cells whose rectangle misses the original polygon entirely.

    Overlap is measured in the normalized frame; cells that touch the
    polygon only in a zero-area set are removed, partial overlaps stay.
    """
    target = Polygon(d.transform.apply(original.as_array()))
    kept = []
    for cell, (cx, cy, hw, hh) in zip(d.cells, d.normalized_cell_bounds()):
        area = intersection_area_with_rect(target, cx - hw, cy - hh, cx + hw, cy + hh)
        if area > AREA_EPS:
            kept.append(cell)
    return replace(d, cells=tuple(kept))


def sgd_lower_bound(n_cells: int, radius: float, speed: float) -> float:
    """Coverage-time floor for a uniform grid: (n-1) hops of one cell edge.

    Any visit order of n cells needs at least n-1 legs, and adjacent centers
    in the uniform grid are one cell edge apart.
    """
    if n_cells < 1:
        raise ValueError(f"need at least one cell, got {n_cells}")
    _check_radius(radius)
    if not (math.isfinite(speed) and speed > 0):
        raise ValueError(f"speed must be > 0, got {speed!r}")
    return (n_cells - 1) * cell_edge(radius) / speed
