import numpy as np
import pytest
from helpers import random_complex
from hypothesis import given, settings
from hypothesis import strategies as st

from fovlab.errors import DegeneratePair, DimensionMismatch, InvalidM, ZeroVector
from fovlab.fov import hull
from fovlab.gfov import sample_tol
from fovlab.rayleigh import (
    disk_grid,
    line_grid,
    min_inner_product_check,
    min_inner_product_report,
    min_residual_check,
    min_residual_report,
    residuals,
    rq,
    rq_gen,
    rq_naive,
    stationarity_gradient,
)
from fovlab.spectra import eig, gen_normal, gen_prescribed


@pytest.fixture(scope="module")
def system():
    a = gen_prescribed([1, 2 + 1j, -1, 3j], 40, seed=21)
    return a, eig(a)


# -- rq / rq_naive ----------------------------------------------------------------


def test_rq_examples():
    assert rq(np.array([1, 0]), np.diag([5, 1])) == 5
    rng = np.random.default_rng(0)
    a, x = random_complex(rng, 5, 5), random_complex(rng, 5)
    assert abs(rq((3 - 2j) * x, a) - rq(x, a)) <= 1e-13 * abs(rq(x, a))
    ref = np.vdot(x, a @ x) / np.vdot(x, x)
    assert abs(rq(x, a) - ref) <= 1e-14 * abs(ref)
    with pytest.raises(ZeroVector):
        rq(np.zeros(5), a)


def test_rq_naive_examples(system):
    a, e = system
    rng = np.random.default_rng(1)
    x = random_complex(rng, 4)
    assert abs(rq_naive(x, x, a) - rq(x, a)) <= 1e-13 * abs(rq(x, a))
    for i in range(4):
        p = e.pair(i)
        assert abs(rq_naive(p.left, p.right, a) - p.value) <= 1e-10 * max(1, abs(p.value))


def test_rq_naive_unbounded():
    eps = 1e-6
    val = rq_naive(np.array([1, eps]), np.array([0, 1]), np.array([[0, 1], [0, 0]]))
    assert val == pytest.approx(1 / eps, rel=1e-12)
    with pytest.raises(DegeneratePair):
        rq_naive(np.array([1, 0]), np.array([0, 1]), np.eye(2))


@settings(max_examples=50)
@given(st.integers(0, 10_000))
def test_homogeneity(seed):
    rng = np.random.default_rng(seed)
    a = random_complex(rng, 4, 4)
    x, y = random_complex(rng, 4), random_complex(rng, 4)
    alpha, beta = complex(*rng.uniform(0.5, 2, 2)), complex(*rng.uniform(-2, -0.5, 2))
    base = rq_naive(y, x, a)
    tol = 1e-13 * abs(base) * abs(np.vdot(y, a @ x)) / abs(np.vdot(y, x)) / max(abs(base), 1e-300)
    tol = max(tol, 1e-13 * abs(base))
    assert abs(rq_naive(alpha * y, beta * x, a) - base) <= 100 * tol
    assert abs(rq_naive(y, x, beta * a) - beta * base) <= 100 * tol * abs(beta)


@settings(max_examples=50)
@given(st.integers(0, 10_000))
def test_oblique_projection(seed):
    rng = np.random.default_rng(seed)
    a = random_complex(rng, 5, 5)
    x, y = random_complex(rng, 5), random_complex(rng, 5)
    rho = rq_naive(y, x, a)
    rx, ry = residuals(y, x, rho, a)
    scale = np.linalg.norm(a) * np.linalg.norm(x) * np.linalg.norm(y)
    sep = abs(np.vdot(y, x)) / (np.linalg.norm(x) * np.linalg.norm(y))
    assert abs(np.vdot(y, rx)) <= 1e-12 * scale / sep
    assert abs(np.vdot(x, ry)) <= 1e-12 * scale / sep


# -- rq_gen -----------------------------------------------------------------------


def test_rq_gen_eigenvectors(system):
    a, e = system
    for i in range(4):
        rep = rq_gen(e.v[:, i], a, e)
        assert abs(rep.value - e.lam[i]) <= 1e-10 * e.cond_v
        assert rep.constraint_gap <= 1e-10
        assert np.linalg.norm(rep.residual_right) <= 1e-9 * e.cond_v


def test_rq_gen_hermitian():
    rng = np.random.default_rng(2)
    b = random_complex(rng, 4, 4)
    a = b + b.conj().T
    e = eig(a)
    x = random_complex(rng, 4)
    assert abs(rq_gen(x, a, e).value - rq(x, a)) <= 1e-13 * np.linalg.norm(a)


def test_rq_gen_change_of_variables(system):
    a, e = system
    rng = np.random.default_rng(3)
    for _ in range(10):
        x = random_complex(rng, 4)
        z = e.v_inv @ x
        ref = rq(z, np.diag(e.lam))
        assert abs(rq_gen(x, a, e).value - ref) <= 1e-11 * e.cond_v


def test_rq_gen_report(system):
    a, e = system
    rep = rq_gen(random_complex(np.random.default_rng(4), 4), a, e)
    assert abs(np.vdot(rep.y, rep.x) - 1) <= 1e-12
    assert abs(rep.recompute(a) - rep.value) <= 1e-13 * abs(rep.value)
    assert rep.constraint_gap <= 1e-10
    assert rep.h_residual_norm >= 0
    with pytest.raises(ZeroVector):
        rq_gen(np.zeros(4), a, e)


def test_rq_gen_with_m(system):
    a, e = system
    x = random_complex(np.random.default_rng(5), 4)
    m = 2.0 * np.eye(4)
    rep = rq_gen(x, a, e, m=m)
    assert abs(np.vdot(rep.y, m @ rep.x) - 1) <= 1e-12
    assert abs(rep.value - rq_gen(x, a, e).value / 2) <= 1e-12
    assert abs(rep.recompute(a, m) - rep.value) <= 1e-13 * abs(rep.value)
    with pytest.raises(InvalidM):
        rq_gen(x, a, e, m=-np.eye(4))
    with pytest.raises(InvalidM):
        rq_gen(x, a, e, m=np.array([[1, 5, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    with pytest.raises(DimensionMismatch):
        rq_gen(x, a, e, m=np.eye(3))


def test_translation_invariance(system):
    a, e = system
    mu = 0.7 - 1.3j
    shifted = eig(a - mu * np.eye(4))
    rng = np.random.default_rng(6)
    for _ in range(5):
        x = random_complex(rng, 4)
        # same eigenvectors, so the same metric
        lhs = rq_gen(x, a - mu * np.eye(4), e).value
        assert abs(lhs - (rq_gen(x, a, e).value - mu)) <= 1e-12 * e.cond_v
    assert np.allclose(shifted.lam, e.lam - mu)


def test_boundedness(system):
    a, e = system
    rng = np.random.default_rng(7)
    g = hull(e.lam)
    vals = [rq_gen(random_complex(rng, 4), a, e).value for _ in range(10_000)]
    assert np.all(g.distance(np.array(vals)) <= sample_tol(e))


# -- residuals --------------------------------------------------------------------


def test_residuals_examples(system):
    a, e = system
    p = e.pair(1)
    rx, ry = residuals(p.left, p.right, p.value, a)
    assert np.linalg.norm(rx) <= 1e-10 * np.linalg.norm(a)
    assert np.linalg.norm(ry) <= 1e-10 * np.linalg.norm(a) * e.cond_v
    rng = np.random.default_rng(8)
    x, y = random_complex(rng, 4), random_complex(rng, 4)
    rx, ry = residuals(y, x, 0, a)
    assert np.array_equal(rx, a @ x) and np.array_equal(ry, a.conj().T @ y)
    mu = 0.3 + 2j
    rx, ry = residuals(y, x, mu, a)
    for i in range(4):
        assert abs(rx[i] - (sum(a[i, j] * x[j] for j in range(4)) - mu * x[i])) <= 1e-14 * 10
        ref = sum(np.conj(a[j, i]) * y[j] for j in range(4)) - np.conj(mu) * y[i]
        assert abs(ry[i] - ref) <= 1e-14 * 10
    with pytest.raises(DimensionMismatch):
        residuals(np.ones(3), x, mu, a)


# -- minimality -------------------------------------------------------------------


def test_grids():
    g = disk_grid(1 + 1j, 2.0)
    assert len(g) == 201 and g[0] == 1 + 1j
    assert np.max(np.abs(g - (1 + 1j))) <= 2.0 + 1e-12
    lg = line_grid(3.0, 1.0)
    assert len(lg) == 201 and lg[100] == 3.0 and lg[0] == 2.0 and lg[-1] == 4.0


def test_min_residual_eigenvector(system):
    a, e = system
    right, left = min_residual_report(e.v[:, 0], a, e)
    assert right.passed and left.passed
    assert right.gap_at_rho <= right.tol


def test_min_residual_random(system):
    a, e = system
    rng = np.random.default_rng(9)
    for _ in range(10):
        assert min_residual_check(random_complex(rng, 4), a, e)
    with pytest.raises(ZeroVector):
        min_residual_check(np.zeros(4), a, e)


def test_min_residual_gap_away_from_rho(system):
    # equality holds only at rho, so a grid far from it keeps a strict gap
    a, e = system
    u = random_complex(np.random.default_rng(10), 4)
    right, left = min_residual_report(u, a, e, mu_grid=disk_grid(100.0, 1.0))
    assert right.passed and left.passed
    assert right.min_gap > 0 and left.min_gap > 0
    assert right.gap_at_rho <= right.tol


def test_min_residual_normal_classical():
    a = gen_normal([1, 2j, -1], seed=3)
    e = eig(a)
    u = random_complex(np.random.default_rng(11), 3)
    right, _ = min_residual_report(u, a, e)
    assert right.passed
    # with H = I the minimizer is the classical Rayleigh quotient
    grid = disk_grid(rq(u, a), 1.0)
    lhs = [np.linalg.norm(a @ u - mu * u) for mu in grid]
    assert int(np.argmin(lhs)) == 0


def test_min_inner_product_symmetric():
    rng = np.random.default_rng(12)
    b = rng.standard_normal((4, 4))
    a = b + b.T
    x = rng.standard_normal(4)
    rep = min_inner_product_report(x, x, a)
    assert rep.passed
    assert rep.gap_at_rho <= rep.tol


def test_min_inner_product_real_fixture():
    a = gen_prescribed([1, 2, 4], 20, seed=4, real=True).real
    rng = np.random.default_rng(13)
    for _ in range(10):
        x, y = rng.standard_normal(3), rng.standard_normal(3)
        assert min_inner_product_check(y, x, a)


def test_min_inner_product_eigenpair():
    a = gen_prescribed([1, 2, 4], 20, seed=4, real=True).real
    e = eig(a)
    x, y = e.v[:, 1].real, e.left[:, 1].real
    rep = min_inner_product_report(y, x, a)
    assert rep.passed and rep.gap_at_rho <= rep.tol


def test_min_inner_product_errors():
    a = np.diag([1.0, 2.0])
    with pytest.raises(DegeneratePair):
        min_inner_product_check(np.array([1.0, 0]), np.array([0, 1.0]), a)
    with pytest.raises(ValueError):
        min_inner_product_check(np.array([1j, 0]), np.array([1.0, 0]), a)
    with pytest.raises(ValueError):
        min_inner_product_check(np.ones(2), np.ones(2), np.diag([1j, 2]))


# -- stationarity -----------------------------------------------------------------


def test_stationarity_eigenpair(system):
    a, e = system
    anorm = np.linalg.norm(a, 2)
    for i in range(4):
        assert stationarity_gradient(e.left[:, i], e.v[:, i], a, h=1e-5) <= 1e-3 * anorm


def test_stationarity_random(system):
    a, _ = system
    rng = np.random.default_rng(14)
    anorm = np.linalg.norm(a, 2)
    for _ in range(20):
        x, y = random_complex(rng, 4), random_complex(rng, 4)
        assert stationarity_gradient(y, x, a) >= 1e-2 * anorm


def test_stationarity_scalar_matrix():
    rng = np.random.default_rng(15)
    a = (2 - 1j) * np.eye(3)
    x, y = random_complex(rng, 3), random_complex(rng, 3)
    assert stationarity_gradient(y, x, a) <= 1e-9


def test_stationarity_matches_analytic_gradient():
    # d/dx of y*Ax/y*x along direction d is y*(A - rho)d / y*x
    rng = np.random.default_rng(16)
    a = random_complex(rng, 3, 3)
    x, y = random_complex(rng, 3), random_complex(rng, 3)
    x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
    rho = rq_naive(y, x, a)
    g = np.conj(y) @ (a - rho * np.eye(3)) / np.vdot(y, x)
    gy = np.conj((a - rho * np.eye(3)) @ x) / np.vdot(y, x)
    ref = max(np.max(np.abs(g)), np.max(np.abs(gy)))
    assert abs(stationarity_gradient(y, x, a) - ref) <= 1e-6 * ref
