"""Pure-Python/numpy geometry kernels (fallback for ``_geomcore``)."""

import numpy as np


def chain_hull(xs, ys):
    """Monotone-chain hull of lexicographically sorted points.

    Returns indices of the hull vertices, counterclockwise, starting at the
    first (leftmost-lowest) point. Collinear and clockwise turns are popped
    exactly (``cross <= 0``).
    """
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    n = len(xs)
    if n <= 1:
        return np.arange(n, dtype=np.intp)

    def keep(stack, k):
        while len(stack) >= 2:
            o, a = stack[-2], stack[-1]
            cross = (xs[a] - xs[o]) * (ys[k] - ys[o]) - (ys[a] - ys[o]) * (xs[k] - xs[o])
            if cross <= 0.0:
                stack.pop()
            else:
                break
        stack.append(k)

    lower = []
    for k in range(n):
        keep(lower, k)
    upper = []
    for k in range(n - 1, -1, -1):
        keep(upper, k)
    return np.array(lower[:-1] + upper[:-1], dtype=np.intp)


def _segment_dist(ax, ay, bx, by, px, py):
    dx, dy = bx - ax, by - ay
    s = max(abs(dx), abs(dy))
    if s == 0.0:
        return np.hypot(px - ax, py - ay)
    # scaled direction, so the squared length cannot underflow
    u, w = dx / s, dy / s
    t = np.clip(((px - ax) * u + (py - ay) * w) / (s * (u * u + w * w)), 0.0, 1.0)
    d = np.hypot(px - (ax + t * dx), py - (ay + t * dy))
    # endpoints are measured directly so that a vertex is at distance exactly 0
    d = np.minimum(d, np.hypot(px - ax, py - ay))
    return np.minimum(d, np.hypot(px - bx, py - by))


def convex_dist(vx, vy, px, py):
    """Euclidean distance from each query point to a convex polygon.

    ``vx, vy`` are the counterclockwise vertices (one vertex is a point, two a
    segment). Points inside or on the boundary get distance 0.
    """
    vx = np.asarray(vx, dtype=float)
    vy = np.asarray(vy, dtype=float)
    px = np.asarray(px, dtype=float)
    py = np.asarray(py, dtype=float)
    m = vx.shape[0]
    if m == 1:
        return np.hypot(px - vx[0], py - vy[0])
    if m == 2:
        return _segment_dist(vx[0], vy[0], vx[1], vy[1], px, py)
    inside = np.ones(px.shape, dtype=bool)
    dist = np.full(px.shape, np.inf)
    for k in range(m):
        ax, ay = vx[k], vy[k]
        bx, by = vx[(k + 1) % m], vy[(k + 1) % m]
        cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        inside &= cross >= 0.0
        dist = np.minimum(dist, _segment_dist(ax, ay, bx, by, px, py))
    dist[inside] = 0.0
    return dist
