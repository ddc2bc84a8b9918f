from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fovlab.errors import ComplexSpectrum, RankDeficientBasis, SandwichViolation
from fovlab.gfov import gfov
from fovlab.spectra import eig, gen_prescribed
from fovlab.variational import (
    cf_tol,
    courant_fischer_verify,
    rayleigh_ritz_extrema,
    subspace_extremum,
)


@pytest.fixture(scope="module")
def five():
    a = gen_prescribed([1, 2, 3, 4, 5], 100, seed=13, real=True)
    return a, eig(a)


def _span_max_oracle(e, basis):
    # max of z* diag(lam) z / z* z over z in V^{-1} span(basis), brute force
    # over a dense sample of the (small) coefficient sphere
    z = e.v_inv @ basis
    rng = np.random.default_rng(0)
    c = rng.standard_normal((basis.shape[1], 20000)) + 1j * rng.standard_normal((basis.shape[1], 20000))
    w = z @ c
    vals = np.einsum("ik,i,ik->k", w.conj(), e.lam.real, w).real / np.einsum("ik,ik->k", w.conj(), w).real
    return vals.max(), vals.min()


# -- subspace_extremum ------------------------------------------------------------


def test_subspace_extremum_eigenvector(five):
    _, e = five
    for i in range(5):
        assert abs(subspace_extremum(e, e.v[:, i], "max") - (i + 1)) <= 1e-10 * e.cond_v
        assert abs(subspace_extremum(e, e.v[:, i], "min") - (i + 1)) <= 1e-10 * e.cond_v


def test_subspace_extremum_full_space(five):
    _, e = five
    ident = np.eye(5)
    assert abs(subspace_extremum(e, ident, "max") - 5) <= 1e-10
    assert abs(subspace_extremum(e, ident, "min") - 1) <= 1e-10


def test_subspace_extremum_list_input(five):
    _, e = five
    cols = [e.v[:, 0], e.v[:, 2]]
    assert subspace_extremum(e, cols) == subspace_extremum(e, np.column_stack(cols))
    assert abs(subspace_extremum(e, cols) - 3) <= 1e-10 * e.cond_v


def test_subspace_extremum_against_sampling(five):
    _, e = five
    rng = np.random.default_rng(3)
    basis = rng.standard_normal((5, 2))
    hi, lo = _span_max_oracle(e, basis)
    assert subspace_extremum(e, basis, "max") >= hi - 1e-10
    assert subspace_extremum(e, basis, "min") <= lo + 1e-10
    assert subspace_extremum(e, basis, "max") - hi <= 1e-3
    assert lo - subspace_extremum(e, basis, "min") <= 1e-3


def test_subspace_extremum_errors(five):
    _, e = five
    x = np.arange(5.0)
    with pytest.raises(RankDeficientBasis):
        subspace_extremum(e, np.column_stack([x, 2 * x]))
    with pytest.raises(ValueError):
        subspace_extremum(e, np.ones((4, 1)))
    with pytest.raises(ValueError):
        subspace_extremum(e, x, "median")
    with pytest.raises(ComplexSpectrum):
        subspace_extremum(eig([[0, 1], [-1, 0]]), np.eye(2))


# -- Rayleigh-Ritz ----------------------------------------------------------------


def test_rayleigh_ritz_examples():
    a = gen_prescribed([-3, 0, 7], 50, seed=2, real=True)
    lo, hi = rayleigh_ritz_extrema(a, eig(a))
    assert abs(lo + 3) <= 1e-8 and abs(hi - 7) <= 1e-8
    lo, hi = rayleigh_ritz_extrema(np.diag([1.0, 4.0]), eig(np.diag([1.0, 4.0])))
    assert (lo, hi) == pytest.approx((1, 4), abs=1e-14)


def test_rayleigh_ritz_complex_spectrum():
    a = np.array([[0, 1], [-1, 0]])
    with pytest.raises(ComplexSpectrum):
        rayleigh_ritz_extrema(a, eig(a))


def test_rayleigh_ritz_sandwich_violation(five):
    # feeding an unrelated matrix breaks the sampled sandwich
    _, e = five
    with pytest.raises(SandwichViolation):
        rayleigh_ritz_extrema(np.diag([10.0, 20, 30, 40, 50]), e, n_samples=50)


def test_rayleigh_ritz_matches_gfov_extent():
    for seed in range(4):
        a = gen_prescribed([-2, -0.5, 1, 3], 80, seed=seed, real=True)
        e = eig(a)
        lo, hi = rayleigh_ritz_extrema(a, e, n_samples=200, seed=seed)
        glo, ghi = gfov(a, n_samples=0).polygon.real_extent()
        assert abs(lo - glo) <= 1e-9 and abs(hi - ghi) <= 1e-9


# -- Courant-Fischer --------------------------------------------------------------


@pytest.mark.parametrize("j", [1, 3, 5])
def test_courant_fischer_examples(five, j):
    a, e = five
    for direction in ("min-max", "max-min"):
        rep = courant_fischer_verify(a, e, j, trials=100, seed=1, direction=direction)
        assert rep.passed
        assert rep.lambda_j == pytest.approx(j, abs=1e-9)
        assert rep.attained_gap <= cf_tol(e, j)
        assert len(rep.inner_values) == 100


def test_courant_fischer_endpoints_are_rayleigh_ritz(five):
    a, e = five
    lo, hi = rayleigh_ritz_extrema(a, e, n_samples=0)
    assert courant_fischer_verify(a, e, 1, trials=10).achieved_at_eigenspan == pytest.approx(lo, abs=1e-10)
    assert courant_fischer_verify(a, e, 5, trials=10).achieved_at_eigenspan == pytest.approx(hi, abs=1e-10)


def test_courant_fischer_errors(five):
    a, e = five
    with pytest.raises(ValueError):
        courant_fischer_verify(a, e, 0)
    with pytest.raises(ValueError):
        courant_fischer_verify(a, e, 6)
    with pytest.raises(ValueError):
        courant_fischer_verify(a, e, 2, direction="sideways")


def test_courant_fischer_deterministic(five):
    a, e = five
    r1 = courant_fischer_verify(a, e, 2, trials=20, seed=4)
    r2 = courant_fischer_verify(a, e, 2, trials=20, seed=4)
    assert r1 == r2


def test_bound_gap_detects_wrong_lambda(five):
    a, e = five
    rep = courant_fischer_verify(a, e, 2, trials=50)
    assert not replace(rep, lambda_j=10.0).passed


# -- structural properties ---------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 6))
def test_interlacing(seed, n):
    rng = np.random.default_rng(seed)
    lam = np.sort(rng.uniform(-5, 5, n))
    e = eig(gen_prescribed(lam, 10, seed=seed, real=True))
    lam = e.lam.real
    basis = rng.standard_normal((n, n - 1))
    hi = subspace_extremum(e, basis, "max")
    lo = subspace_extremum(e, basis, "min")
    tol = 1e-8 * (1 + np.max(np.abs(lam))) * (1 + e.cond_v / 1e3)
    # compression to a codimension-one subspace interlaces
    assert lam[-2] - tol <= hi <= lam[-1] + tol
    assert lam[0] - tol <= lo <= lam[1] + tol


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_monotone_in_subspace(seed):
    rng = np.random.default_rng(seed)
    e = eig(gen_prescribed([-1, 0, 2, 5], 30, seed=seed, real=True))
    basis = rng.standard_normal((4, 3))
    tol = 1e-10
    for k in (1, 2):
        assert subspace_extremum(e, basis[:, :k], "max") <= subspace_extremum(e, basis[:, : k + 1], "max") + tol
        assert subspace_extremum(e, basis[:, :k], "min") >= subspace_extremum(e, basis[:, : k + 1], "min") - tol


def test_constrained_bounds_against_eigenvalues(five):
    # the constrained quotient over any subspace stays within [lam_1, lam_n]
    _, e = five
    rng = np.random.default_rng(5)
    for _ in range(50):
        k = int(rng.integers(1, 6))
        basis = rng.standard_normal((5, k)) + 1j * rng.standard_normal((5, k))
        assert 1 - 1e-9 <= subspace_extremum(e, basis, "min")
        assert subspace_extremum(e, basis, "max") <= 5 + 1e-9
