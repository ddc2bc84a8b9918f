"""Dense complex matrix helpers and H-inner products.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The inner
product convention is ``y* x = sum(conj(y_i) * x_i)``.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .errors import DimensionMismatch, NotPositiveDefinite, SingularBasis

HERM_TOL = 1e-12
FACTOR_TOL = 1e-12
COND_LIMIT = 1e8


def as_matrix(a):
    """Return ``a`` as a square, finite complex128 array."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def as_vector(x, n=None):
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {x.shape}")
    if n is not None and x.shape[0] != n:
        raise DimensionMismatch(f"expected length {n}, got {x.shape[0]}")
    return x


def hermitian_part(a):
    """(A + A*)/2 with exact conjugate symmetry."""
    a = as_matrix(a)
    h = 0.5 * (a + a.conj().T)
    # (a_ij + conj(a_ji))/2 and its mirror round identically, but the diagonal
    # can carry a stray imaginary part; the upper triangle is the master copy.
    upper = np.triu(h, 1)
    return upper + upper.conj().T + np.diag(h.diagonal().real).astype(complex)


def is_hermitian(a, tol=HERM_TOL):
    a = np.asarray(a)
    return np.linalg.norm(a - a.conj().T) <= tol * max(np.linalg.norm(a), np.finfo(float).tiny)


def is_normal(a, tol=1e-12):
    """True iff ||AA* - A*A||_F <= tol * ||A||_F**2."""
    a = as_matrix(a)
    ah = a.conj().T
    return np.linalg.norm(a @ ah - ah @ a) <= tol * np.linalg.norm(a) ** 2


@dataclass(frozen=True, eq=False)
class Metric:
    """Hermitian positive definite ``h`` with upper-triangular ``factor``
    satisfying ``factor* @ factor == h``.

    ``cond_estimate`` is the 2-norm condition number of the factor, i.e. the
    square root of the condition number of ``h``.
    """

    h: np.ndarray
    factor: np.ndarray
    cond_estimate: float

    @property
    def dim(self):
        return self.h.shape[0]

    @classmethod
    def identity(cls, n):
        eye = np.eye(n, dtype=complex)
        return cls(eye, eye.copy(), 1.0)

    @classmethod
    def from_hpd(cls, h):
        """Build a metric from an explicit HPD matrix via Cholesky."""
        h = as_matrix(h)
        if not is_hermitian(h):
            raise NotPositiveDefinite("metric matrix is not Hermitian")
        h = hermitian_part(h)
        try:
            c = sla.cholesky(h, lower=False)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefinite("metric matrix is not positive definite") from exc
        return cls(h, c, float(np.linalg.cond(c)))

    def apply(self, x):
        """H @ x through the factor."""
        return self.factor.conj().T @ (self.factor @ x)

    def congruence(self, a):
        """C A C^{-1}; F(C A C^{-1}) is the Givens field of ``a`` in this metric."""
        ca = self.factor @ as_matrix(a)
        # B C = C A  <=>  C^T B^T = (C A)^T
        return sla.solve_triangular(self.factor, ca.T, trans="T", lower=False).T


def metric_from_basis(v, cond_limit=COND_LIMIT):
    """Metric ``H = (V V*)^{-1}`` for a nonsingular basis ``v``.

    ``V V*`` is factored as ``U U*`` with ``U`` upper triangular (RQ of ``V``),
    so ``C = U^{-1}`` is the upper factor with ``C* C = H`` and has the
    conditioning of ``V`` rather than of ``V V*``.
    """
    v = as_matrix(v)
    n = v.shape[0]
    sv = np.linalg.svd(v, compute_uv=False)
    cond = np.inf if sv[-1] == 0 else float(sv[0] / sv[-1])
    if not cond <= cond_limit:
        raise SingularBasis(f"basis condition number {cond:.3e} exceeds limit {cond_limit:.1e}")
    u, _ = sla.rq(v)
    c = sla.solve_triangular(u, np.eye(n, dtype=complex), lower=False)
    # make the factor's diagonal real positive, as a Cholesky factor would be
    d = c.diagonal()
    c = (np.conj(d) / np.abs(d))[:, None] * c
    h = c.conj().T @ c
    h = hermitian_part(h)
    return Metric(h, c, cond)


def h_inner(x, y, m):
    """<x, y>_H = y* H x, conjugate-linear in ``y``."""
    x = as_vector(x, m.dim)
    y = as_vector(y, m.dim)
    return complex(np.vdot(m.factor @ y, m.factor @ x))


def h_norm(x, m):
    x = as_vector(x, m.dim)
    return float(np.linalg.norm(m.factor @ x))
