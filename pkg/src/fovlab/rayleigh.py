"""Rayleigh quotient variants and their residual, minimality and
stationarity checks.

Three quotients are provided:

* ``rq(x, A) = x* A x / x* x``
* ``rq_naive(y, x, A) = y* A x / y* x`` (unconstrained two-sided)
* ``rq_gen(x, A, e)``: two-sided with ``y = (V V*)^{-1} x``, normalized so
  that ``y* M x = 1``
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePair, DimensionMismatch, InvalidM, ZeroVector
from .matcore import as_matrix, as_vector, is_hermitian

DEGENERATE_TOL = 1e-14
GRID_POINTS = 201


def rq(x, a):
    a = as_matrix(a)
    x = as_vector(x, a.shape[0])
    xx = np.vdot(x, x).real
    if xx == 0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    return complex(np.vdot(x, a @ x) / xx)


def _pair_denominator(y, x):
    yx = np.vdot(y, x)
    if abs(yx) <= DEGENERATE_TOL * np.linalg.norm(x) * np.linalg.norm(y):
        raise DegeneratePair(f"|y* x| = {abs(yx):.3e} is numerically zero")
    return yx


def rq_naive(y, x, a):
    """``y* A x / y* x``; unbounded as ``y* x -> 0``."""
    a = as_matrix(a)
    x = as_vector(x, a.shape[0])
    y = as_vector(y, a.shape[0])
    return complex(np.vdot(y, a @ x) / _pair_denominator(y, x))


@dataclass(frozen=True, eq=False)
class RqReport:
    value: complex
    x: np.ndarray
    y: np.ndarray
    residual_right: np.ndarray
    residual_left: np.ndarray
    h_residual_norm: float
    constraint_gap: float

    def recompute(self, a, m=None):
        """``y* A x / y* M x`` from the stored vectors."""
        mx = self.x if m is None else m @ self.x
        return complex(np.vdot(self.y, a @ self.x) / np.vdot(self.y, mx))


def _check_m(m, metric):
    m = as_matrix(m)
    if m.shape != metric.h.shape:
        raise DimensionMismatch("M has the wrong size")
    hm = metric.h @ m
    if not is_hermitian(hm, 1e-10):
        raise InvalidM("H M is not Hermitian")
    if np.min(np.linalg.eigvalsh(0.5 * (hm + hm.conj().T))) <= 0:
        raise InvalidM("H M is not positive definite")
    return m


def rq_gen(x, a, e, m=None):
    """Generalized two-sided quotient of ``x`` under the constraint ``y = H x``.

    ``x`` is rescaled so that ``y* M x = 1``; ``M`` defaults to the identity
    and must make ``H M`` Hermitian positive definite.
    """
    a = as_matrix(a)
    x = as_vector(x, a.shape[0])
    if not np.any(x):
        raise ZeroVector("generalized Rayleigh quotient of the zero vector")
    metric = e.metric
    if m is not None:
        m = _check_m(m, metric)
    h = metric.h
    mx = x if m is None else m @ x
    s = np.vdot(h @ x, mx).real
    x = x / np.sqrt(s)
    y = h @ x
    mx = x if m is None else m @ x
    value = complex(np.vdot(y, a @ x) / np.vdot(y, mx))
    r_right, r_left = residuals(y, x, value, a)
    return RqReport(
        value=value,
        x=x,
        y=y,
        residual_right=r_right,
        residual_left=r_left,
        h_residual_norm=float(np.linalg.norm(metric.factor @ r_right)),
        constraint_gap=float(np.linalg.norm(y - h @ x) / np.linalg.norm(y)),
    )


def residuals(y, x, mu, a):
    """``(A x - mu x, A* y - conj(mu) y)``."""
    a = as_matrix(a)
    n = a.shape[0]
    x = as_vector(x, n)
    y = as_vector(y, n)
    mu = complex(mu)
    return a @ x - mu * x, a.conj().T @ y - np.conj(mu) * y


def disk_grid(center, radius, n=GRID_POINTS):
    """``n`` points on a disk: the center plus a sunflower spiral."""
    center = complex(center)
    k = np.arange(1, n)
    r = radius * np.sqrt(k / (n - 1))
    phi = k * np.pi * (3.0 - np.sqrt(5.0))
    return np.concatenate([[center], center + r * np.exp(1j * phi)])


def line_grid(center, radius, n=GRID_POINTS):
    """``n`` equispaced real points on ``[center - radius, center + radius]``,
    with ``center`` itself exactly in the middle."""
    t = np.linspace(-1.0, 1.0, n)
    t[n // 2] = 0.0
    return float(center) + radius * t


@dataclass(frozen=True)
class GridCheck:
    passed: bool
    min_gap: float  # min over the grid of lhs - rhs; must be >= -tol
    gap_at_rho: float  # |lhs(rho) - rhs|; must be <= tol
    argmin_ok: bool  # grid minimizer is the grid point nearest rho
    tol: float

    def __bool__(self):
        return self.passed


def _grid_verdict(lhs, rhs, grid, rho, lhs_at_rho, tol):
    gaps = lhs - rhs
    nearest = int(np.argmin(np.abs(grid - rho)))
    argmin = int(np.argmin(lhs))
    # a tie within tol with the nearest point counts as attained there
    argmin_ok = argmin == nearest or lhs[nearest] - lhs[argmin] <= tol
    gap_rho = abs(lhs_at_rho - rhs)
    ok = bool(np.min(gaps) >= -tol and gap_rho <= tol and argmin_ok)
    return GridCheck(ok, float(np.min(gaps)), float(gap_rho), bool(argmin_ok), float(tol))


def min_residual_report(u, a, e, mu_grid=None, v=None, tol=1e-10):
    """Minimal-residual property in the H-norm, right and mirrored left form.

    Right: ``|A u - mu u|_H^2 >= |A u|_H^2 - |rho|^2 |u|_H^2`` with equality
    at ``rho = u* H A u / u* H u``. Left: the same for ``A* v - conj(mu) v``
    (``v`` defaults to ``H u``), with ``rho = v* A H v / v* H v``.
    Returns the pair of :class:`GridCheck` (right, left).
    """
    a = as_matrix(a)
    u = as_vector(u, a.shape[0])
    if not np.any(u):
        raise ZeroVector("min_residual_check of the zero vector")
    metric = e.metric
    if v is None:
        v = metric.h @ u
    v = as_vector(v, a.shape[0])
    ah = a.conj().T
    return (
        _h_residual_grid(a, u, metric, mu_grid, tol, conj=False),
        _h_residual_grid(ah, v, metric, mu_grid, tol, conj=True),
    )


def _h_residual_grid(b, u, metric, mu_grid, tol, conj):
    c = metric.factor
    cu = c @ u
    cbu = c @ (b @ u)
    uu = np.vdot(cu, cu).real
    rho_b = np.vdot(cu, cbu) / uu  # minimizer over the coefficient of u
    # left form: the residual is A* v - conj(mu) v, so mu = conj(coefficient)
    rho = np.conj(rho_b) if conj else rho_b
    if mu_grid is None:
        mu_grid = disk_grid(rho, 2 * abs(rho) if abs(rho) > 0 else 1.0)
    mu_grid = np.asarray(mu_grid, dtype=complex)
    coef = np.conj(mu_grid) if conj else mu_grid
    resid = cbu[None, :] - coef[:, None] * cu[None, :]
    lhs = np.einsum("ki,ki->k", resid.conj(), resid).real
    bu2 = np.vdot(cbu, cbu).real
    rhs = bu2 - abs(rho) ** 2 * uu
    r0 = cbu - rho_b * cu
    lhs_rho = np.vdot(r0, r0).real
    return _grid_verdict(lhs, rhs, mu_grid, rho, lhs_rho, tol * max(1.0, bu2))


def min_residual_check(u, a, e, mu_grid=None, v=None, tol=1e-10):
    right, left = min_residual_report(u, a, e, mu_grid, v, tol)
    return right.passed and left.passed


def _real_vector(x, n, name):
    x = np.asarray(x)
    if np.iscomplexobj(x):
        if np.any(x.imag != 0):
            raise ValueError(f"{name} must be real")
        x = x.real
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise DimensionMismatch(f"{name} must have length {n}")
    return x


def min_inner_product_report(y, x, a, mu_grid=None, tol=1e-10):
    """Minimal inner product of the naive two-sided residuals (real case).

    Checks ``(y^T A - mu y^T)(A x - mu x) >= y^T A^2 x - rho^2 y^T x`` for real
    ``mu`` with equality at ``rho = y^T A x / y^T x``. The identity
    ``lhs - rhs = y^T x (mu - rho)^2`` makes the bound a minimum only when
    ``y^T x > 0``, so ``y`` is sign-normalized first.
    """
    a = np.asarray(a)
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise ValueError("min_inner_product_check needs a real matrix")
        a = a.real
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    x = _real_vector(x, n, "x")
    y = _real_vector(y, n, "y")
    yx = float(y @ x)
    if abs(yx) <= DEGENERATE_TOL * np.linalg.norm(x) * np.linalg.norm(y):
        raise DegeneratePair("y^T x is numerically zero")
    if yx < 0:
        y, yx = -y, -yx
    ya = y @ a
    ax = a @ x
    rho = float(ya @ x) / yx
    if mu_grid is None:
        mu_grid = line_grid(rho, 2 * abs(rho) if rho != 0 else 1.0)
    mu_grid = np.asarray(mu_grid, dtype=float)
    lhs = np.array([(ya - mu * y) @ (ax - mu * x) for mu in mu_grid])
    ya2x = float(ya @ ax)
    rhs = ya2x - rho**2 * yx
    lhs_rho = float((ya - rho * y) @ (ax - rho * x))
    scale = max(1.0, abs(ya2x), float(np.linalg.norm(ya) * np.linalg.norm(ax)))
    return _grid_verdict(lhs, rhs, mu_grid, rho, lhs_rho, tol * scale)


def min_inner_product_check(y, x, a, mu_grid=None, tol=1e-10):
    return min_inner_product_report(y, x, a, mu_grid, tol).passed


def stationarity_gradient(y, x, a, h=1e-5):
    """Largest central-difference slope of ``rq_naive`` over the ``4n`` real
    coordinate directions of ``(x, y)``.

    ``x`` and ``y`` are scaled to unit norm first (the quotient is invariant
    under that), so the step ``h`` is relative. Near zero at a left/right
    eigenvector pair, order ``|A|`` elsewhere.
    """
    a = as_matrix(a)
    n = a.shape[0]
    x = as_vector(x, n)
    y = as_vector(y, n)
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    _pair_denominator(y, x)
    ax = a @ x

    best = 0.0
    for step in (h, 1j * h):
        d = step * np.eye(n)
        # perturb x: rows of d are the perturbation directions
        num_p = np.conj(y) @ (ax[:, None] + a @ d)
        num_m = np.conj(y) @ (ax[:, None] - a @ d)
        den_p = np.vdot(y, x) + np.conj(y) @ d
        den_m = np.vdot(y, x) - np.conj(y) @ d
        best = max(best, float(np.max(np.abs(num_p / den_p - num_m / den_m))) / (2 * h))
        # perturb y: y* A x -> (y + d_k)* A x
        num_p = np.vdot(y, ax) + np.conj(d) @ ax
        num_m = np.vdot(y, ax) - np.conj(d) @ ax
        den_p = np.vdot(y, x) + np.conj(d) @ x
        den_m = np.vdot(y, x) - np.conj(d) @ x
        best = max(best, float(np.max(np.abs(num_p / den_p - num_m / den_m))) / (2 * h))
    return best
