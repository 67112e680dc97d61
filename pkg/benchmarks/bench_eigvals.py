"""Timing of the Hessenberg QR eigenvalue kernel: compiled, pure Python, LAPACK.

Usage: python3 benchmarks/bench_eigvals.py [--sizes 20 50 100 200] [--repeat 3]
"""

import argparse
import time

import numpy as np

from discspec import _kernels
from discspec._kernels import hqr_py
from discspec.linalg import hessenberg


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def spectral_gap(w, ref):
    # largest distance from a computed eigenvalue to the reference spectrum
    return float(max(np.min(np.abs(ref - x)) for x in w))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 50, 100, 200])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    compiled = None
    if _kernels.BACKEND == "cython":
        compiled = _kernels.hqr_eigvals
    print(f"{'n':>5} {'cython [s]':>12} {'python [s]':>12} {'lapack [s]':>12} {'max dev':>10}")
    for n in args.sizes:
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        H = hessenberg(A)
        ref = np.linalg.eigvals(A)
        t_py = best_of(lambda: hqr_py.hqr_eigvals(H.copy(), 100 * n), args.repeat)
        w, _ = hqr_py.hqr_eigvals(H.copy(), 100 * n)
        dev = spectral_gap(w, ref)
        if compiled is not None:
            t_cy = best_of(lambda: compiled(H.copy(), 100 * n), args.repeat)
            dev = max(dev, spectral_gap(compiled(H.copy(), 100 * n)[0], ref))
            cy = f"{t_cy:12.4g}"
        else:
            cy = f"{'n/a':>12}"
        t_la = best_of(lambda: np.linalg.eigvals(H), args.repeat)
        print(f"{n:5d} {cy} {t_py:12.4g} {t_la:12.4g} {dev:10.2e}")


if __name__ == "__main__":
    main()
