"""Rayleigh-Ritz and Courant-Fischer characterizations for nondefective
matrices with real spectrum, using the constrained two-sided quotient.

Under ``y = (V V*)^{-1} x`` the quotient ``y* A x / y* x`` equals
``z* diag(lam) z / z* z`` with ``z = V^{-1} x``, so extrema over a subspace
``S`` reduce to a Hermitian eigenproblem on ``V^{-1} S``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ComplexSpectrum, RankDeficientBasis, SandwichViolation
from .matcore import as_matrix
from .spectra import is_real_spectrum

RANK_TOL = 1e-12


def cf_tol(e, j):
    """Tolerance for the j-th (1-based) eigenvalue claims."""
    return 1e-8 * (1 + abs(float(e.lam[j - 1].real))) * (1 + e.cond_v / 1e3)


def _require_real(e):
    if not is_real_spectrum(e):
        raise ComplexSpectrum("variational characterizations need a real spectrum")


def subspace_extremum(e, basis, which="max"):
    """Exact max or min of the constrained quotient over ``span(basis)``.

    ``basis`` holds column vectors in the original coordinates (a list of
    vectors is also accepted).
    """
    _require_real(e)
    b = np.asarray(basis, dtype=complex)
    if b.ndim == 1:
        b = b[:, None]
    elif isinstance(basis, (list, tuple)):
        b = b.T
    if b.shape[0] != e.n:
        raise ValueError(f"basis vectors must have length {e.n}")
    z = e.v_inv @ b
    q, r = np.linalg.qr(z)
    d = np.abs(np.diag(r))
    if d.size == 0 or d.min() <= RANK_TOL * max(d.max(), np.finfo(float).tiny):
        raise RankDeficientBasis("basis is (numerically) rank deficient")
    m = (q.conj().T * e.lam.real) @ q
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if which == "max":
        return float(w[-1])
    if which == "min":
        return float(w[0])
    raise ValueError("which must be 'max' or 'min'")


def rayleigh_ritz_extrema(a, e, n_samples=1000, seed=0, tol=None):
    """``(lam_1, lam_n)`` as the constrained quotient's extrema over the whole
    space, after checking ``lam_1 y*x <= y*Ax <= lam_n y*x`` on samples."""
    a = as_matrix(a)
    _require_real(e)
    ident = np.eye(e.n, dtype=complex)
    lo = subspace_extremum(e, ident, "min")
    hi = subspace_extremum(e, ident, "max")
    if tol is None:
        tol = 1e-8 * (1 + max(abs(lo), abs(hi))) * (1 + e.cond_v / 1e3)
    if n_samples:
        rng = np.random.default_rng(seed)
        x = rng.standard_normal((e.n, n_samples)) + 1j * rng.standard_normal((e.n, n_samples))
        y = e.metric.h @ x
        yx = np.einsum("ik,ik->k", y.conj(), x).real
        yax = np.einsum("ik,ik->k", y.conj(), a @ x) / yx
        bad = (yax.real < lo - tol) | (yax.real > hi + tol) | (np.abs(yax.imag) > tol)
        if np.any(bad):
            k = int(np.argmax(bad))
            raise SandwichViolation(
                f"{int(bad.sum())} of {n_samples} samples leave [{lo}, {hi}]; e.g. {yax[k]}"
            )
    return lo, hi


@dataclass(frozen=True)
class MinMaxReport:
    j: int
    lambda_j: float
    inner_values: tuple
    achieved_at_eigenspan: float
    direction: str  # "min-max" or "max-min"
    tol: float

    @property
    def bound_gap(self):
        """Worst violation of the one-sided bound (<= 0 when it holds)."""
        vals = np.asarray(self.inner_values)
        if self.direction == "min-max":
            return float(np.max(self.lambda_j - vals)) if vals.size else -np.inf
        return float(np.max(vals - self.lambda_j)) if vals.size else -np.inf

    @property
    def attained_gap(self):
        return abs(self.achieved_at_eigenspan - self.lambda_j)

    @property
    def passed(self):
        return self.bound_gap <= self.tol and self.attained_gap <= self.tol


def _random_subspace(rng, n, k):
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    q, _ = np.linalg.qr(g)
    return q


def courant_fischer_verify(a, e, j, trials=200, seed=0, direction="min-max"):
    """Sampled check of the j-th min-max (or max-min) characterization.

    min-max: the max over every j-dimensional subspace is >= lam_j, with
    equality on the span of the first j right eigenvectors. max-min: the min
    over every (n-j+1)-dimensional subspace is <= lam_j, with equality on the
    span of the last n-j+1 right eigenvectors. Subspaces are drawn in the
    original coordinates.
    """
    as_matrix(a)
    _require_real(e)
    n = e.n
    if not 1 <= j <= n:
        raise ValueError(f"j must be in [1, {n}]")
    lam_j = float(e.lam[j - 1].real)
    rng = np.random.default_rng([seed, j, 0 if direction == "min-max" else 1])
    if direction == "min-max":
        dim, which, span = j, "max", e.v[:, :j]
    elif direction == "max-min":
        dim, which, span = n - j + 1, "min", e.v[:, j - 1 :]
    else:
        raise ValueError("direction must be 'min-max' or 'max-min'")
    values = tuple(
        subspace_extremum(e, _random_subspace(rng, n, dim), which) for _ in range(trials)
    )
    attained = subspace_extremum(e, span, which)
    return MinMaxReport(j, lam_j, values, attained, direction, cf_tol(e, j))
