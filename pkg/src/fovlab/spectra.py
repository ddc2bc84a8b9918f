"""Eigendecomposition with left/right duality and seeded test-matrix generators."""

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .errors import DefectiveMatrix, NonConvergence
from .matcore import COND_LIMIT, Metric, as_matrix, metric_from_basis

EIG_TOL = 1e-10
CLUSTER_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class EigenPair:
    value: complex
    right: np.ndarray
    left: np.ndarray


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Diagonalization ``A = V diag(lam) V^{-1}`` plus the metric ``(V V*)^{-1}``.

    Eigenvalues are ordered by real part, then imaginary part. Columns of
    ``v`` have unit 2-norm and a fixed phase.
    """

    lam: np.ndarray
    v: np.ndarray
    v_inv: np.ndarray
    cond_v: float
    metric: Metric

    @property
    def n(self):
        return self.lam.shape[0]

    @property
    def left(self):
        """Left eigenvectors as the columns of ``(V^{-1})*``."""
        return self.v_inv.conj().T

    def pair(self, i):
        return EigenPair(complex(self.lam[i]), self.v[:, i].copy(), self.left[:, i].copy())

    @property
    def scale(self):
        return max(1.0, float(np.max(np.abs(self.lam))))

    @property
    def real_tol(self):
        """Relative tolerance on imaginary parts for calling the spectrum real;
        eigenvalue roundoff grows with the eigenvector conditioning."""
        return 1e-10 * max(1.0, self.cond_v)


def spectral_order(lam, tol=1e-10):
    """Indices sorting ``lam`` by real part, ties (within tol*scale) by imaginary part."""
    lam = np.asarray(lam, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(lam)))) if lam.size else 1.0
    order = list(np.argsort(lam.real, kind="stable"))
    out = []
    i = 0
    while i < len(order):
        j = i + 1
        while j < len(order) and lam.real[order[j]] - lam.real[order[j - 1]] <= tol * scale:
            j += 1
        group = order[i:j]
        group.sort(key=lambda k: (lam.imag[k], k))
        out.extend(group)
        i = j
    return np.array(out, dtype=int)


def _fix_phase(v):
    n = v.shape[0]
    v = v / np.linalg.norm(v, axis=0)
    thresh = (1.0 - 1e-8) / np.sqrt(n)
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = int(np.argmax(np.abs(col) >= thresh))
        v[:, k] = col * (np.conj(col[idx]) / abs(col[idx]))
        v[idx, k] = abs(col[idx])  # exactly real, not just to roundoff
    return v


def _orthonormalize_clusters(a, lam, v, scale):
    """Replace each near-repeated eigenvalue's columns by an orthonormal basis
    of their span, when that basis is still an invariant subspace."""
    n = lam.shape[0]
    anorm = max(np.linalg.norm(a), np.finfo(float).tiny)
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(lam[j] - lam[i]) <= CLUSTER_TOL * scale:
            j += 1
        if j - i > 1:
            q, _ = np.linalg.qr(v[:, i:j])
            mu = lam[i:j].mean()
            if np.linalg.norm(a @ q - mu * q) <= EIG_TOL * anorm:
                v[:, i:j] = q
        i = j
    return v


def eig(a, cond_limit=COND_LIMIT):
    """Full eigensystem of a nondefective matrix.

    Raises :class:`DefectiveMatrix` when the normalized eigenvector matrix is
    worse conditioned than ``cond_limit``.
    """
    a = as_matrix(a)
    n = a.shape[0]
    try:
        lam, v = sla.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(v))):
        raise NonConvergence("eigensolver returned non-finite values")
    order = spectral_order(lam)
    lam = lam[order]
    v = v[:, order]
    scale = max(1.0, float(np.max(np.abs(lam))))
    v = _orthonormalize_clusters(a, lam, v, scale)
    v = _fix_phase(v)

    sv = np.linalg.svd(v, compute_uv=False)
    cond_v = np.inf if sv[-1] == 0 else float(sv[0] / sv[-1])
    if not cond_v <= cond_limit:
        raise DefectiveMatrix(
            f"eigenvector matrix condition number {cond_v:.3e} exceeds {cond_limit:.1e}"
        )
    anorm = np.linalg.norm(a)
    if np.linalg.norm(a @ v - v * lam) > EIG_TOL * max(anorm, np.finfo(float).tiny):
        raise NonConvergence("eigenpair residual above tolerance")
    v_inv = np.linalg.solve(v, np.eye(n, dtype=complex))
    metric = metric_from_basis(v, cond_limit=cond_limit)
    return EigenSystem(lam, v, v_inv, cond_v, metric)


def left_eigenvectors(e):
    """List of left eigenvectors ``w_i`` with ``w_i* A = lam_i w_i*`` and
    ``(V V*) w_i = v_i``."""
    w = e.left
    return [w[:, i].copy() for i in range(e.n)]


def is_real_spectrum(e, tol=None):
    """True iff ``max|Im lam| <= tol * max(1, max|lam|)``.

    ``tol`` defaults to ``e.real_tol`` for an :class:`EigenSystem` and 1e-10
    for a plain array of eigenvalues.
    """
    if isinstance(e, EigenSystem):
        lam = e.lam
        tol = e.real_tol if tol is None else tol
    else:
        lam = np.asarray(e, dtype=complex)
        tol = 1e-10 if tol is None else tol
    return bool(np.max(np.abs(lam.imag)) <= tol * max(1.0, float(np.max(np.abs(lam)))))


def _haar(rng, n, real):
    if real:
        z = rng.standard_normal((n, n))
    else:
        z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = r.diagonal()
    return q * (d / np.abs(d))


def gen_prescribed(spectrum, cond_target=1.0, seed=0, real=False):
    """Seeded ``A = V diag(spectrum) V^{-1}`` with ``cond(V) == cond_target``.

    ``V = Q1 diag(s) Q2*`` with geometrically spaced singular values from 1
    to ``cond_target``. ``real=True`` draws real orthogonal factors (a real
    spectrum then gives a real matrix).
    """
    lam = np.asarray(spectrum, dtype=complex).ravel()
    if cond_target < 1:
        raise ValueError("cond_target must be >= 1")
    n = lam.shape[0]
    if n == 0:
        raise ValueError("empty spectrum")
    rng = np.random.default_rng(seed)
    q1 = _haar(rng, n, real)
    q2 = _haar(rng, n, real)
    s = np.geomspace(1.0, cond_target, n) if n > 1 else np.ones(1)
    v = (q1 * s) @ q2.conj().T
    a = np.linalg.solve(v.T, (v * lam).T).T
    if real and np.all(lam.imag == 0):
        a = a.real.astype(complex)
    return a


def gen_normal(spectrum, seed=0):
    """Seeded normal matrix ``U diag(spectrum) U*``; Hermitian for real spectra."""
    lam = np.asarray(spectrum, dtype=complex).ravel()
    rng = np.random.default_rng(seed)
    u = _haar(rng, lam.shape[0], real=False)
    a = (u * lam) @ u.conj().T
    if np.all(lam.imag == 0):
        a = 0.5 * (a + a.conj().T)
    return a
