# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometry kernels; same contracts as ``fovlab._geompy``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, fmax, hypot, INFINITY

cnp.import_array()


cdef inline double _cross(double ox, double oy, double ax, double ay,
                          double bx, double by) nogil:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def chain_hull(xs_in, ys_in):
    cdef const double[::1] xs = np.ascontiguousarray(xs_in, dtype=np.float64)
    cdef const double[::1] ys = np.ascontiguousarray(ys_in, dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0]
    if n <= 1:
        return np.arange(n, dtype=np.intp)
    out_arr = np.empty(2 * n, dtype=np.intp)
    cdef Py_ssize_t[::1] out = out_arr
    cdef Py_ssize_t top = 0, k, o, a, start
    with nogil:
        for k in range(n):
            while top >= 2:
                o = out[top - 2]
                a = out[top - 1]
                if _cross(xs[o], ys[o], xs[a], ys[a], xs[k], ys[k]) <= 0.0:
                    top -= 1
                else:
                    break
            out[top] = k
            top += 1
        # drop the shared endpoint, then build the upper chain on top
        top -= 1
        start = top
        for k in range(n - 1, -1, -1):
            while top - start >= 2:
                o = out[top - 2]
                a = out[top - 1]
                if _cross(xs[o], ys[o], xs[a], ys[a], xs[k], ys[k]) <= 0.0:
                    top -= 1
                else:
                    break
            out[top] = k
            top += 1
        top -= 1
    return out_arr[:top].copy()


cdef inline double _seg_dist(double ax, double ay, double bx, double by,
                             double px, double py) nogil:
    cdef double dx = bx - ax, dy = by - ay
    cdef double s = fmax(fabs(dx), fabs(dy))
    cdef double u, w, t, d, e
    if s == 0.0:
        return hypot(px - ax, py - ay)
    # scaled direction, so the squared length cannot underflow
    u = dx / s
    w = dy / s
    t = ((px - ax) * u + (py - ay) * w) / (s * (u * u + w * w))
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    d = hypot(px - (ax + t * dx), py - (ay + t * dy))
    # endpoints are measured directly so that a vertex is at distance exactly 0
    e = hypot(px - ax, py - ay)
    if e < d:
        d = e
    e = hypot(px - bx, py - by)
    if e < d:
        d = e
    return d


def convex_dist(vx_in, vy_in, px_in, py_in):
    cdef const double[::1] vx = np.ascontiguousarray(vx_in, dtype=np.float64)
    cdef const double[::1] vy = np.ascontiguousarray(vy_in, dtype=np.float64)
    px_arr = np.ascontiguousarray(px_in, dtype=np.float64)
    py_arr = np.ascontiguousarray(py_in, dtype=np.float64)
    shape = px_arr.shape
    cdef const double[::1] px = px_arr.ravel()
    cdef const double[::1] py = py_arr.ravel()
    cdef Py_ssize_t m = vx.shape[0], q = px.shape[0], i, k, k1
    out_arr = np.empty(q, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double best, d
    cdef bint inside

    with nogil:
        for i in range(q):
            if m == 1:
                out[i] = hypot(px[i] - vx[0], py[i] - vy[0])
                continue
            if m == 2:
                out[i] = _seg_dist(vx[0], vy[0], vx[1], vy[1], px[i], py[i])
                continue
            inside = True
            for k in range(m):
                k1 = k + 1 if k + 1 < m else 0
                if _cross(vx[k], vy[k], vx[k1], vy[k1], px[i], py[i]) < 0.0:
                    inside = False
                    break
            if inside:
                out[i] = 0.0
                continue
            best = INFINITY
            for k in range(m):
                k1 = k + 1 if k + 1 < m else 0
                d = _seg_dist(vx[k], vy[k], vx[k1], vy[k1], px[i], py[i])
                if d < best:
                    best = d
            out[i] = best
    return out_arr.reshape(shape)
