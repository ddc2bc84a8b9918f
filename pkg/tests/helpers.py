"""Seeded matrix fixtures shared by the test modules."""

import numpy as np

from fovlab.spectra import gen_normal, gen_prescribed

SIZES = (2, 5, 10, 25, 50)
CONDS = (1.0, 10.0, 1e2, 1e3, 1e6)
KINDS = ("real", "complex")


def fixture_seed(n, cond, kind):
    return 1000 * n + 10 * int(round(np.log10(cond))) + (kind == "complex")


def make_fixture(n, cond, kind):
    """``(spectrum, A)``. Real-spectrum fixtures are real matrices with
    eigenvalues in [-5, 5]; complex ones have eigenvalues in a 10x10 box."""
    seed = fixture_seed(n, cond, kind)
    rng = np.random.default_rng(seed)
    if kind == "real":
        lam = np.sort(rng.uniform(-5, 5, n))
        return lam.astype(complex), gen_prescribed(lam, cond, seed=seed, real=True)
    lam = rng.uniform(-5, 5, n) + 1j * rng.uniform(-5, 5, n)
    return lam, gen_prescribed(lam, cond, seed=seed)


def all_fixtures():
    return [(n, c, k) for n in SIZES for c in CONDS for k in KINDS]


def fixture_id(n, cond, kind):
    return f"n{n}-c{cond:g}-{kind}"


def normal_fixture(i):
    rng = np.random.default_rng(500 + i)
    n = (2, 3, 5, 8, 12)[i % 5]
    if i % 2:
        lam = rng.uniform(-3, 3, n)
    else:
        lam = rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)
    return lam, gen_normal(lam, seed=500 + i)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
