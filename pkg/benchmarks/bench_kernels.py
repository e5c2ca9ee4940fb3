"""Compare the numba and numpy kernel backends on oracle-sized problems.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--points 8000 16000]

Times Sturm-bisection eigenvalues, inverse-iteration solves and Laguerre
evaluation on the matrix the oracle builds for gamma^2 = 5, N = 3, l = 1,
and checks that both backends return the same numbers.
"""

import argparse
import statistics
import time

import numpy as np

from miepot.core import DimensionlessModel
from miepot.kernels import get_backend
from miepot.oracle import Grid, build_matrix, reduce_to_1d


def timeit(fn, repeat):
    fn()  # warm-up, also triggers numba compilation
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, nargs="+", default=[4000, 8000, 16000])
    ap.add_argument("--count", type=int, default=3, help="eigenvalues per solve")
    args = ap.parse_args()

    backends = {"numpy": get_backend("numpy")}
    try:
        backends["numba"] = get_backend("numba")
    except ImportError:
        print("numba not importable: timing the numpy backend only")

    model = DimensionlessModel.mie(5.0, 3)
    pot = reduce_to_1d(model, 1)
    z = np.linspace(0.0, 40.0, 200_000)

    print(f"{'points':>8} {'kernel':>12} " + " ".join(f"{name:>12}" for name in backends) + "   speedup")
    for points in args.points:
        diag, off = build_matrix(pot, Grid(1e-3, 40.0, points))
        rhs = np.ones(diag.size)
        ref_vals = backends["numpy"].lowest_eigenvalues(diag, off, args.count, 1e-12)
        jobs = {
            "eigenvalues": lambda be: be.lowest_eigenvalues(diag, off, args.count, 1e-12),
            "solve": lambda be: be.tridiag_solve(diag, off, ref_vals[0], rhs),
            "laguerre": lambda be: be.laguerre(6, 3.5, z),
        }
        for kernel, job in jobs.items():
            times = {name: timeit(lambda be=be: job(be), args.repeat) for name, be in backends.items()}
            cells = " ".join(f"{1e3 * t:10.2f}ms" for t in times.values())
            speed = f"{times['numpy'] / times['numba']:8.1f}x" if "numba" in times else ""
            print(f"{points:>8} {kernel:>12} {cells} {speed}")
        if "numba" in backends:
            got = backends["numba"].lowest_eigenvalues(diag, off, args.count, 1e-12)
            assert np.allclose(got, ref_vals, rtol=0, atol=1e-10), (got, ref_vals)


if __name__ == "__main__":
    main()
