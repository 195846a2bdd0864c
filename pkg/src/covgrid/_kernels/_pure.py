"""NumPy fallback for the hot kernels.

Used when the compiled extension is unavailable. Both implementations
evaluate the same IEEE expressions so results are identical bit for bit;
tests assert parity whenever the extension is present.
"""

import numpy as np

OUTSIDE = 0
BOUNDARY = 1
INSIDE = 2


def classify_points(vertices, points, eps):
    """Classify points against a simple polygon: 0 outside, 1 boundary, 2 inside.

    vertices: (n, 2) float64, points: (m, 2) float64. Boundary means within
    eps of an edge; interior uses the even-odd crossing rule.
    """
    vertices = np.asarray(vertices, dtype=np.float64)
    points = np.asarray(points, dtype=np.float64)
    m = points.shape[0]
    px = points[:, 0]
    py = points[:, 1]
    on_boundary = np.zeros(m, dtype=bool)
    inside = np.zeros(m, dtype=bool)
    eps2 = eps * eps
    n = vertices.shape[0]
    for k in range(n):
        x1, y1 = vertices[k]
        x2, y2 = vertices[(k + 1) % n]
        # squared distance to the segment
        dx = x2 - x1
        dy = y2 - y1
        seg2 = dx * dx + dy * dy
        if seg2 > 0.0:
            t = ((px - x1) * dx + (py - y1) * dy) / seg2
            t = np.clip(t, 0.0, 1.0)
        else:
            t = np.zeros(m)
        ex = px - (x1 + t * dx)
        ey = py - (y1 + t * dy)
        on_boundary |= ex * ex + ey * ey <= eps2
        # even-odd ray crossing (ray toward +x)
        crosses = (y1 > py) != (y2 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xs = x1 + (py - y1) / (y2 - y1) * dx
        inside ^= crosses & (px < xs)
    out = np.zeros(m, dtype=np.uint8)
    out[inside] = INSIDE
    out[on_boundary] = BOUNDARY
    return out


def covered_mask(points, cells, eps):
    """True per point if it lies in at least one padded rectangle.

    cells: (k, 4) float64 rows of (center_x, center_y, half_w, half_h).
    """
    points = np.asarray(points, dtype=np.float64)
    cells = np.asarray(cells, dtype=np.float64)
    m = points.shape[0]
    covered = np.zeros(m, dtype=bool)
    # chunk over cells to bound the (m x k) temporary
    for start in range(0, cells.shape[0], 256):
        block = cells[start : start + 256]
        hit = (
            np.abs(points[:, 0, None] - block[None, :, 0]) <= block[None, :, 2] + eps
        ) & (np.abs(points[:, 1, None] - block[None, :, 1]) <= block[None, :, 3] + eps)
        covered |= hit.any(axis=1)
    return covered


def two_opt(dist, order):
    """Improve a fixed-endpoint visit order by 2-opt segment reversal.

    Best-improvement passes until no exchange shortens the path. Endpoints
    order[0] and order[-1] never move. Returns a new int64 array.
    """
    d = [list(map(float, row)) for row in np.asarray(dist, dtype=np.float64)]
    o = [int(v) for v in order]
    n = len(o)
    if n < 4:
        return np.asarray(o, dtype=np.int64)
    improved = True
    while improved:
        improved = False
        best_delta = -1e-12
        best_i = -1
        best_j = -1
        for i in range(1, n - 2):
            a = o[i - 1]
            b = o[i]
            dab = d[a][b]
            for j in range(i + 1, n - 1):
                c = o[j]
                e = o[j + 1]
                delta = d[a][c] + d[b][e] - dab - d[c][e]
                if delta < best_delta:
                    best_delta = delta
                    best_i = i
                    best_j = j
        if best_i >= 0:
            o[best_i : best_j + 1] = o[best_i : best_j + 1][::-1]
            improved = True
    return np.asarray(o, dtype=np.int64)
