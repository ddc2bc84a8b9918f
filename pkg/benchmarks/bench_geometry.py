"""Compare the compiled and numpy geometry kernels.

    python benchmarks/bench_geometry.py [--repeat 5] [--sizes 100,1000,10000]

Reports the best-of-``repeat`` wall time per call for each kernel and the
speedup of the compiled one. Both kernels are checked to agree first.
"""

import argparse
import timeit

import numpy as np

from fovlab import _geompy

try:
    from fovlab import _geomcore
except ImportError:
    _geomcore = None


def _cloud(n, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    order = np.lexsort((z.imag, z.real))
    return z.real[order].copy(), z.imag[order].copy()


def _polygon(m, seed):
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(0, 2 * np.pi, m))
    v = np.exp(1j * t)
    return v.real.copy(), v.imag.copy()


def _best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 10_000:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--sizes", default="100,1000,10000")
    args = p.parse_args(argv)
    if _geomcore is None:
        raise SystemExit("compiled kernels not built; run pip install -e . --no-build-isolation")
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'kernel':<12} {'size':>8} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in sizes:
        xs, ys = _cloud(n, n)
        assert np.array_equal(_geompy.chain_hull(xs, ys), _geomcore.chain_hull(xs, ys))
        tp = _best(lambda: _geompy.chain_hull(xs, ys), args.repeat)
        tc = _best(lambda: _geomcore.chain_hull(xs, ys), args.repeat)
        print(f"{'chain_hull':<12} {n:>8} {tp:>12.3e} {tc:>12.3e} {tp / tc:>7.1f}x")
    for n in sizes:
        # a 256-gon against n query points, the shape of a containment check
        vx, vy = _polygon(256, n)
        qx, qy = _cloud(n, n + 1)
        a = _geompy.convex_dist(vx, vy, qx, qy)
        b = _geomcore.convex_dist(vx, vy, qx, qy)
        assert np.max(np.abs(a - b)) <= 1e-14
        tp = _best(lambda: _geompy.convex_dist(vx, vy, qx, qy), args.repeat)
        tc = _best(lambda: _geomcore.convex_dist(vx, vy, qx, qy), args.repeat)
        print(f"{'convex_dist':<12} {n:>8} {tp:>12.3e} {tc:>12.3e} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
