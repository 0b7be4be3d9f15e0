"""Benchmark the Monte Carlo entropy kernel: numba JIT vs pure numpy.

Run:  python benchmarks/bench_mc.py
"""

import time

import numpy as np

from entpow._kernels import HAVE_NUMBA, product_entropies_numba, product_entropies_numpy
from entpow.linalg import random_unitary

CASES = [
    (2, 2, 100_000),
    (2, 3, 100_000),
    (3, 4, 100_000),
    (4, 4, 100_000),
    (2, 3, 1_000_000),
]
REPEATS = 5


def run(fn, u, z1, z2):
    fn(u, z1, z2)  # warm up (jit compile, cache touch)
    best = np.inf
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn(u, z1, z2)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    print(f"{'case':>18} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for d1, d2, samples in CASES:
        u = random_unitary(d1 * d2, rng)
        z1 = rng.standard_normal((samples, d1)) + 1j * rng.standard_normal((samples, d1))
        z2 = rng.standard_normal((samples, d2)) + 1j * rng.standard_normal((samples, d2))
        label = f"{d1}x{d2} n={samples}"
        t_np = run(product_entropies_numpy, u, z1, z2)
        if HAVE_NUMBA:
            t_nb = run(product_entropies_numba, u, z1, z2)
            gap = np.max(np.abs(product_entropies_numpy(u, z1, z2)
                                - product_entropies_numba(u, z1, z2)))
            assert gap < 1e-12, gap
            print(f"{label:>18} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms {t_np / t_nb:>7.1f}x")
        else:
            print(f"{label:>18} {t_np * 1e3:>8.1f}ms {'n/a':>10} {'':>8}")
    if not HAVE_NUMBA:
        print("numba backend inactive (ENTPOW_NO_NUMBA set or numba missing)")


if __name__ == "__main__":
    main()
