"""Timing comparison of the compiled kernels against the numpy fallback.

The workload mirrors the Bowen-volume estimator: precomputed translated-
action matrices over a grid, then acceptance tests for a large batch of
sampled coordinate vectors.

    python benchmarks/bench_kernels.py

Forcing the fallback without rebuilding:

    SLOWENT_NO_SPEEDUPS=1 python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from slowent import kernels
from slowent.catalog import ExampleSpec, build_example
from slowent.chain import associated_polynomials, build_chain_basis
from slowent.divergence import BoxGrid, ad_grid_matrices, chain_coordinate_data
from slowent.filtration import compute_filtration


def workload(spec, R, points, samples, seed=0):
    algebra, u = build_example(spec)
    f = compute_filtration(algebra, u)
    cb = associated_polynomials(algebra, u, f, build_chain_basis(algebra, u, f))
    transform, levels = chain_coordinate_data(cb)
    mats = ad_grid_matrices(algebra, u, BoxGrid(u.k, R, points), transform)
    rng = np.random.default_rng(seed)
    half = 0.5 * float(R) ** (-levels.astype(float))
    ys = rng.uniform(-1.0, 1.0, size=(samples, algebra.dim)) * half
    return mats, np.ascontiguousarray(ys)


def bench(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    cases = [
        ("sl(2), k=1, 33-pt grid", ExampleSpec("sl_first_row_restriction", (2, 1)), 33),
        ("sl(3) jordan powers, k=2, 9x9 grid", ExampleSpec("sl_jordan_powers", (3,)), 9),
    ]
    samples = 400_000
    print(f"active backend: {kernels.BACKEND}   ({samples} samples per case)\n")
    header = (
        f"{'case':36s} {'kernel':>10s} {kernels.BACKEND:>10s} {'numpy':>10s} {'speedup':>8s}"
    )
    print(header)
    print("-" * len(header))
    for label, spec, points in cases:
        mats, ys = workload(spec, 16.0, points, samples)
        for name, fast, ref in (
            ("batch_sup", kernels.batch_sup, kernels._batch_sup_numpy),
            (
                "accept_mask",
                lambda m, y: kernels.accept_mask(m, y, 0.5),
                lambda m, y: kernels._accept_mask_numpy(m, y, 0.5),
            ),
        ):
            t_fast, out_fast = bench(fast, mats, ys)
            t_ref, out_ref = bench(ref, mats, ys)
            if name == "batch_sup":
                assert np.allclose(out_fast, out_ref, rtol=1e-12)
            else:
                assert (out_fast == out_ref).all()
            print(
                f"{label:36s} {name:>10s} {t_fast * 1e3:9.1f}ms {t_ref * 1e3:9.1f}ms "
                f"{t_ref / t_fast:7.1f}x"
            )
        print()


if __name__ == "__main__":
    main()
