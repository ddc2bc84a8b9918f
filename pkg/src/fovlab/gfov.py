"""Generalized two-sided field of values ``G(A)``.

``G(A) = {y* A x : y = (V V*)^{-1} x, y* x = 1}`` for a nondefective
``A = V diag(lam) V^{-1}``. It coincides with the convex hull of the
eigenvalues and with the Givens field in the metric ``H = (V V*)^{-1}``.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .fov import Polygon, fov_boundary, givens_fov_boundary, hausdorff, hull
from .matcore import COND_LIMIT, Metric, as_matrix, hermitian_part, is_normal
from .spectra import EigenSystem, eig, is_real_spectrum

PD_TOL = 1e-10
CROSS_ANGLES = 256


def sample_tol(e):
    """Containment tolerance for definitional samples; grows with cond(V)."""
    return 1e-8 * e.scale * max(1.0, e.cond_v / 1e3)


def cross_tol(e):
    return 1e-6 * e.scale * max(1.0, e.cond_v / 1e3) ** 2


@dataclass(frozen=True, eq=False)
class GfovResult:
    polygon: Polygon
    eig_system: EigenSystem
    metric: Metric
    samples_inside_fraction: float
    cross_gap: float

    @property
    def cross_ok(self):
        return self.cross_gap <= cross_tol(self.eig_system)


def _system(a, e, cond_limit):
    return e if e is not None else eig(a, cond_limit=cond_limit)


def gfov(a, n_samples=256, seed=0, cond_limit=COND_LIMIT, cross_check=True, e=None):
    """``G(A)`` as the hull of the spectrum, cross-checked two ways.

    The Givens field in ``(V V*)^{-1}`` gives ``cross_gap`` and ``n_samples``
    definitional samples give ``samples_inside_fraction``.
    """
    a = as_matrix(a)
    e = _system(a, e, cond_limit)
    poly = hull(e.lam)
    gap = float("nan")
    if cross_check:
        gap = hausdorff(poly, givens_fov_boundary(a, e.metric, CROSS_ANGLES))
    frac = 1.0
    if n_samples:
        vals = gfov_samples(a, n_samples, seed, e=e)
        frac = float(np.mean(poly.distance(vals) <= sample_tol(e)))
    return GfovResult(poly, e, e.metric, frac, gap)


def constrained_pairs(x, e):
    """Rescale the columns of ``x`` so that ``y = H x`` satisfies ``y* x = 1``."""
    h = e.metric.h
    s = np.einsum("ik,ik->k", x.conj(), h @ x).real
    if np.any(s <= 0):
        raise AssertionError("x* H x must be positive for x != 0")
    x = x / np.sqrt(s)
    return x, h @ x


def gfov_samples(a, n, seed=0, cond_limit=COND_LIMIT, e=None, x=None):
    """Values ``y* A x`` for ``n`` seeded random ``x`` with ``y = H x``, ``y* x = 1``."""
    a = as_matrix(a)
    e = _system(a, e, cond_limit)
    if x is None:
        rng = np.random.default_rng(seed)
        dim = a.shape[0]
        x = rng.standard_normal((dim, n)) + 1j * rng.standard_normal((dim, n))
    else:
        x = np.asarray(x, dtype=complex).reshape(a.shape[0], -1)
    x, y = constrained_pairs(x, e)
    return np.einsum("ik,ik->k", y.conj(), a @ x)


@dataclass(frozen=True)
class DefinitenessReport:
    classification: str
    min_real_eig: float
    witness_sample: Optional[tuple] = None


def definiteness(a, n_samples=100, seed=0, cond_limit=COND_LIMIT, e=None):
    """Classify ``a`` as positive-definite, positive-semidefinite, not-positive
    or complex-spectrum in the ``(V V*)^{-1}`` inner product."""
    a = as_matrix(a)
    e = _system(a, e, cond_limit)
    lam_min = float(np.min(e.lam.real))
    if not is_real_spectrum(e):
        return DefinitenessReport("complex-spectrum", lam_min)
    thresh = PD_TOL * e.scale
    if lam_min > thresh:
        cls = "positive-definite"
    elif lam_min > -thresh:
        cls = "positive-semidefinite"
    else:
        cls = "not-positive"

    witness = None
    if cls == "positive-definite":
        rng = np.random.default_rng(seed)
        dim = a.shape[0]
        x = rng.standard_normal((dim, n_samples)) + 1j * rng.standard_normal((dim, n_samples))
        x, y = constrained_pairs(x, e)
        vals = np.einsum("ik,ik->k", y.conj(), a @ x)
        k = int(np.argmin(vals.real))
        witness = (x[:, k], y[:, k], complex(vals[k]))
        if vals[k].real <= 0:
            # sampled definition disagrees with the spectrum
            cls = "positive-semidefinite"
    elif cls == "not-positive":
        x, y = constrained_pairs(e.v[:, :1].copy(), e)
        witness = (x[:, 0], y[:, 0], complex(y[:, 0].conj() @ a @ x[:, 0]))
    return DefinitenessReport(cls, lam_min, witness)


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    status: str  # "pass", "fail" or "skipped"
    gap: float = float("nan")
    tol: float = float("nan")

    @property
    def passed(self):
        return self.status != "fail"


@dataclass(frozen=True)
class PropertyReport:
    checks: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _check(name, gap, tol):
    return PropertyCheck(name, "pass" if gap <= tol else "fail", float(gap), float(tol))


def verify_gfov_properties(a, alpha=2 + 1j, tol=1e-8, n_angles=512, cond_limit=COND_LIMIT):
    """Check the polygon identities of ``G`` on ``a``.

    translation  G(A + alpha I) = G(A) + alpha
    scaling      G(alpha A) = alpha G(A)
    equivalence  G(A) = F(diag(lam))
    normality    G(A) = F(A) when A is normal (else skipped)
    hermitian    G(H(A)) = [lam_min, lam_max] of H(A) = real extent of F(A)
    """
    a = as_matrix(a)
    alpha = complex(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    e = eig(a, cond_limit=cond_limit)
    g = hull(e.lam)
    base = max(1.0, g.scale)
    checks = []

    shifted = hull(eig(a + alpha * np.eye(a.shape[0]), cond_limit=cond_limit).lam)
    checks.append(_check("translation", hausdorff(shifted, g + alpha), tol * (base + abs(alpha))))

    scaled = hull(eig(alpha * a, cond_limit=cond_limit).lam)
    checks.append(_check("scaling", hausdorff(scaled, alpha * g), tol * base * max(1.0, abs(alpha))))

    diag_fov = fov_boundary(np.diag(e.lam), n_angles)
    checks.append(_check("equivalence", hausdorff(g, diag_fov), tol * base))

    f = None
    if is_normal(a, 1e-10):
        f = fov_boundary(a, n_angles)
        checks.append(_check("normality", hausdorff(g, f), tol * base))
    else:
        checks.append(PropertyCheck("normality", "skipped"))

    ha = hermitian_part(a)
    g_h = hull(eig(ha, cond_limit=cond_limit).lam)
    w = np.linalg.eigvalsh(ha)
    interval = hull([w[0], w[-1]])
    if f is None:
        f = fov_boundary(a, n_angles)
    lo, hi = f.real_extent()
    gap = max(
        hausdorff(g_h, interval),
        abs(lo - w[0]),
        abs(hi - w[-1]),
        float(np.max(np.abs(g_h.vertices.imag))),
    )
    checks.append(_check("hermitian_part", gap, tol * max(1.0, float(np.max(np.abs(w))))))
    return PropertyReport(tuple(checks))
