"""Classical and Givens fields of values, and convex-polygon geometry.

The field of values ``F(A)`` is approximated from inside by sweeping
supporting lines: for each angle ``theta`` the top eigenvector ``x`` of the
Hermitian part of ``exp(i theta) A`` gives the boundary point ``x* A x``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, EmptyInput, NonConvergence
from .matcore import Metric, as_matrix

HULL_TOL = 1e-12
TIE_TOL = 1e-10
REFINE_TOL = 1e-12
DEFAULT_ANGLES = 256
_CHUNK_BYTES = 1 << 25


@dataclass(frozen=True, eq=False)
class Polygon:
    """Convex polygon with counterclockwise complex ``vertices``.

    The first vertex is the lowest (then leftmost) one. One vertex means a
    point, two a segment.
    """

    vertices: np.ndarray

    def __len__(self):
        return self.vertices.shape[0]

    @property
    def kind(self):
        return {1: "point", 2: "segment"}.get(len(self), "polygon")

    @property
    def scale(self):
        return float(np.max(np.abs(self.vertices)))

    def distance(self, z):
        """Distance from point(s) ``z`` to the polygon (0 inside)."""
        z = np.asarray(z, dtype=complex)
        d = _kernels.convex_dist(
            self.vertices.real, self.vertices.imag, z.real.ravel(), z.imag.ravel()
        )
        return d.reshape(z.shape) if z.ndim else float(d[0])

    def contains(self, z, tol=0.0):
        return contains(self, z, tol)

    def real_extent(self):
        return float(self.vertices.real.min()), float(self.vertices.real.max())

    def imag_extent(self):
        return float(self.vertices.imag.min()), float(self.vertices.imag.max())

    def __add__(self, beta):
        return hull(self.vertices + complex(beta))

    __radd__ = __add__

    def __mul__(self, alpha):
        return hull(self.vertices * complex(alpha))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Polygon({self.kind}, {len(self)} vertices)"


def _seg_dist(z, a, b):
    d = b - a
    len2 = d.real * d.real + d.imag * d.imag
    if len2 == 0.0:
        return abs(z - a)
    t = min(1.0, max(0.0, ((z - a) * d.conjugate()).real / len2))
    return abs(z - (a + t * d))


def _prune(verts, tol):
    """Drop vertices within ``tol`` of the segment joining their neighbours."""
    verts = [complex(v) for v in verts]
    changed = True
    while changed and len(verts) > 2:
        changed = False
        k = 0
        while k < len(verts) and len(verts) > 2:
            m = len(verts)
            if _seg_dist(verts[k], verts[k - 1], verts[(k + 1) % m]) <= tol:
                del verts[k]
                changed = True
            else:
                k += 1
    if len(verts) == 2 and abs(verts[1] - verts[0]) <= tol:
        verts = verts[:1]
    return np.array(verts, dtype=complex)


def hull(points):
    """Minimal convex polygon containing ``points`` (monotone chain).

    Vertices within ``1e-12 * max|p|`` of the segment joining their
    neighbours are dropped, so nearly collinear sets collapse to segments and
    near-coincident ones to a point.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size == 0:
        raise EmptyInput("hull of an empty point set")
    if not np.all(np.isfinite(pts)):
        raise ValueError("non-finite point")
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    verts = pts[_kernels.chain_hull(pts.real, pts.imag)] if pts.size > 1 else pts
    verts = _prune(verts, HULL_TOL * float(np.max(np.abs(pts))))
    start = np.lexsort((verts.real, verts.imag))[0]
    return Polygon(np.roll(verts, -start))


def contains(p, z, tol=0.0):
    """True where ``z`` is within distance ``tol`` of polygon ``p``."""
    d = p.distance(z)
    return d <= tol if np.ndim(d) else bool(d <= tol)


def hausdorff(p, q):
    """Symmetric Hausdorff distance between two convex polygons.

    The distance to a convex set is a convex function, so its maximum over
    the other polygon is attained at a vertex.
    """
    if len(p) == 0 or len(q) == 0:
        raise EmptyInput("hausdorff of an empty polygon")
    return float(max(np.max(q.distance(p.vertices)), np.max(p.distance(q.vertices))))


def _support(a, thetas):
    """Top eigenvalue of the Hermitian part of ``exp(i theta) A`` per angle,
    with the two ends of the supporting facet (equal unless the eigenvalue
    is tied)."""
    n = a.shape[0]
    rot = np.exp(1j * thetas)[:, None, None] * a[None, :, :]
    herm = 0.5 * (rot + np.conj(np.swapaxes(rot, 1, 2)))
    try:
        w, x = np.linalg.eigh(herm)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    top = x[:, :, -1]
    p = np.einsum("ki,ij,kj->k", top.conj(), a, top)
    ends = np.stack([p, p], axis=1)
    if n > 1:
        tie_tol = TIE_TOL * max(float(np.max(np.abs(w))), np.finfo(float).tiny)
        for k in np.nonzero(w[:, -1] - w[:, -2] <= tie_tol)[0]:
            # flat facet: its endpoints are the extreme Rayleigh points of the
            # skew part compressed to the top eigenspace
            cols = np.nonzero(w[k, -1] - w[k] <= tie_tol)[0]
            q = x[k][:, cols]
            skew = (rot[k] - rot[k].conj().T) / 2j
            _, u = np.linalg.eigh(q.conj().T @ skew @ q)
            e2 = q @ u[:, [0, -1]]
            ends[k] = np.einsum("ik,ij,jk->k", e2.conj(), a, e2)
    return w[:, -1], ends


def _sweep(a, thetas):
    per = max(1, _CHUNK_BYTES // (16 * a.size * 3))
    parts = [_support(a, thetas[i : i + per]) for i in range(0, len(thetas), per)]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def _gap_bounds(t1, w1, e1, t2, w2, e2):
    """Distance from the corner of two consecutive supporting lines to the
    chord joining their nearest facet ends; bounds the local inscribed error."""
    det = np.sin(t1 - t2)
    with np.errstate(divide="ignore", invalid="ignore"):
        qx = (-w1 * np.sin(t2) + w2 * np.sin(t1)) / det
        qy = (np.cos(t1) * w2 - np.cos(t2) * w1) / det
    q = qx + 1j * qy
    d = np.abs(e1[:, :, None] - e2[:, None, :]).reshape(len(t1), 4)
    pick = np.argmin(d, axis=1)
    a = e1[np.arange(len(t1)), pick // 2]
    b = e2[np.arange(len(t1)), pick % 2]
    seg = b - a
    len2 = (seg * seg.conj()).real
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.clip(((q - a) * seg.conj()).real / len2, 0.0, 1.0)
    t = np.where(len2 > 0, t, 0.0)
    gap = np.abs(q - (a + t * seg))
    # near-parallel lines (or wide sweeps) give no usable corner
    return np.where(np.isfinite(gap) & (np.abs(det) > 1e-14), gap, np.abs(b - a))


def fov_boundary(a, n_angles=DEFAULT_ANGLES, refine=None, refine_tol=REFINE_TOL):
    """Inscribed polygon of the field of values.

    ``n_angles`` uniformly spaced supporting lines are swept first. Up to
    ``refine`` extra angles (default ``n_angles``; 0 disables) then bisect the
    intervals whose corner-to-chord gap exceeds ``refine_tol`` times the
    numerical radius, largest gap first. Every vertex is a Rayleigh value
    ``x* A x`` with ``|x| = 1``.
    """
    a = as_matrix(a)
    if n_angles < 3:
        raise ValueError("n_angles must be at least 3")
    budget = n_angles if refine is None else int(refine)
    thetas = 2 * np.pi * np.arange(n_angles) / n_angles
    w, ends = _sweep(a, thetas)
    if budget > 0:
        tol = refine_tol * max(float(np.max(np.abs(ends))), np.finfo(float).tiny)
        while budget > 0:
            nxt = np.roll(np.arange(len(thetas)), -1)
            t2 = thetas[nxt].copy()
            t2[-1] += 2 * np.pi
            gaps = _gap_bounds(thetas, w, ends, t2, w[nxt], ends[nxt])
            bad = np.nonzero(gaps > tol)[0]
            if bad.size == 0:
                break
            bad = bad[np.argsort(-gaps[bad], kind="stable")][:budget]
            budget -= bad.size
            mids = np.mod(0.5 * (thetas[bad] + t2[bad]), 2 * np.pi)
            wm, em = _sweep(a, mids)
            thetas = np.concatenate([thetas, mids])
            w = np.concatenate([w, wm])
            ends = np.concatenate([ends, em])
            order = np.argsort(thetas, kind="stable")
            thetas, w, ends = thetas[order], w[order], ends[order]
    return hull(ends.ravel())


def givens_fov_boundary(a, m, n_angles=DEFAULT_ANGLES, refine=None, refine_tol=REFINE_TOL):
    """Field of values in the ``m``-inner product, as ``F(C A C^{-1})``."""
    a = as_matrix(a)
    if not isinstance(m, Metric):
        m = Metric.from_hpd(m)
    if m.dim != a.shape[0]:
        raise DimensionMismatch(f"metric of size {m.dim} for a {a.shape[0]}x{a.shape[0]} matrix")
    return fov_boundary(m.congruence(a), n_angles, refine, refine_tol)
