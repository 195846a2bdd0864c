# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels; must match covgrid._kernels._pure result-for-result.

The arithmetic expressions are written in the same order as the pure
implementation so both produce identical IEEE-754 results.
"""

from libc.math cimport fabs

import numpy as np

OUTSIDE = 0
BOUNDARY = 1
INSIDE = 2


def classify_points(vertices, points, double eps):
    """Classify points against a simple polygon: 0 outside, 1 boundary, 2 inside."""
    cdef const double[:, ::1] v = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t m = p.shape[0]
    out_arr = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef double eps2 = eps * eps
    cdef Py_ssize_t i, k
    cdef double px, py, x1, y1, x2, y2, dx, dy, seg2, t, ex, ey, xs
    cdef bint inside, boundary
    for i in range(m):
        px = p[i, 0]
        py = p[i, 1]
        inside = False
        boundary = False
        for k in range(n):
            x1 = v[k, 0]
            y1 = v[k, 1]
            if k + 1 < n:
                x2 = v[k + 1, 0]
                y2 = v[k + 1, 1]
            else:
                x2 = v[0, 0]
                y2 = v[0, 1]
            dx = x2 - x1
            dy = y2 - y1
            seg2 = dx * dx + dy * dy
            if seg2 > 0.0:
                t = ((px - x1) * dx + (py - y1) * dy) / seg2
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            else:
                t = 0.0
            ex = px - (x1 + t * dx)
            ey = py - (y1 + t * dy)
            if ex * ex + ey * ey <= eps2:
                boundary = True
            if (y1 > py) != (y2 > py):
                xs = x1 + (py - y1) / (y2 - y1) * dx
                if px < xs:
                    inside = not inside
        if boundary:
            out[i] = BOUNDARY
        elif inside:
            out[i] = INSIDE
    return out_arr


def covered_mask(points, cells, double eps):
    """True per point if it lies in at least one padded rectangle."""
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] c = np.ascontiguousarray(cells, dtype=np.float64)
    cdef Py_ssize_t m = p.shape[0]
    cdef Py_ssize_t k = c.shape[0]
    out_arr = np.zeros(m, dtype=bool)
    cdef unsigned char[::1] out = out_arr.view(np.uint8)
    cdef Py_ssize_t i, j
    cdef double px, py
    for i in range(m):
        px = p[i, 0]
        py = p[i, 1]
        for j in range(k):
            if fabs(px - c[j, 0]) <= c[j, 2] + eps and fabs(py - c[j, 1]) <= c[j, 3] + eps:
                out[i] = 1
                break
    return out_arr


def two_opt(dist, order):
    """Improve a fixed-endpoint visit order by 2-opt segment reversal."""
    cdef const double[:, ::1] d = np.ascontiguousarray(dist, dtype=np.float64)
    out_arr = np.asarray(order, dtype=np.int64).copy()
    cdef long long[::1] o = out_arr
    cdef Py_ssize_t n = o.shape[0]
    if n < 4:
        return out_arr
    cdef bint improved = True
    cdef double best_delta, delta, dab
    cdef Py_ssize_t best_i, best_j, i, j, lo, hi
    cdef long long a, b, cc, e, tmp
    while improved:
        improved = False
        best_delta = -1e-12
        best_i = -1
        best_j = -1
        for i in range(1, n - 2):
            a = o[i - 1]
            b = o[i]
            dab = d[a, b]
            for j in range(i + 1, n - 1):
                cc = o[j]
                e = o[j + 1]
                delta = d[a, cc] + d[b, e] - dab - d[cc, e]
                if delta < best_delta:
                    best_delta = delta
                    best_i = i
                    best_j = j
        if best_i >= 0:
            lo = best_i
            hi = best_j
            while lo < hi:
                tmp = o[lo]
                o[lo] = o[hi]
                o[hi] = tmp
                lo += 1
                hi -= 1
            improved = True
    return out_arr
