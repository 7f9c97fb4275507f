"""Time the numba kernels against their pure-numpy twins.

The first numba call (compilation or cache load) is timed separately and
excluded from the steady-state numbers.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time
import timeit

import numpy as np

from toeplitz_ladder import _kernels_numpy as npk

try:
    from toeplitz_ladder import _kernels_numba as nbk
except ImportError:  # numba missing
    nbk = None


def workloads():
    rng = np.random.default_rng(0)
    z = rng.uniform(0.1, 20, 4096) + 1j * rng.uniform(-10, 10, 4096)
    w = rng.normal(size=257) * 0.01 + 0j
    w[0] = 1.0
    th = np.sort(rng.uniform(0, 2 * np.pi, 2048))
    vals = np.exp(np.cos(th)) + 0j
    coeffs = rng.normal(size=64) + 1j * rng.normal(size=64)
    xs = np.exp(1j * th)
    return {
        "lgamma_array[4096]": lambda k: k.lgamma_array(z),
        "log_barnes_g_array[4096]": lambda k: k.log_barnes_g_array(z, 20),
        "bessel_i_all[64, t=30]": lambda k: k.bessel_i_all(64, 30.0),
        "levinson[n=256]": lambda k: k.levinson(w, np.conj(w), 256),
        "horner[deg 63, 2048 pts]": lambda k: k.horner(coeffs, xs),
        "fourier_sums[2048 pts, |m|<=32]": lambda k: k.fourier_sums(th, vals, -32, 32),
        "hyp2f1_coeffs[n=200]": lambda k: k.hyp2f1_coeffs(200, 1.3 + 0.7j, -199.3 + 0.7j),
        "dp2_orbit[n=200]": lambda k: k.dp2_orbit(40.0, -0.98, 200),
    }


def best(fn, repeat: int) -> float:
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"{'kernel':34s} {'numpy':>12s} {'numba':>12s} {'speedup':>8s} {'first call':>11s}")
    for name, call in workloads().items():
        t_np = best(lambda: call(npk), args.repeat)
        if nbk is None:
            print(f"{name:34s} {t_np * 1e3:10.3f}ms {'n/a':>12s}")
            continue
        t0 = time.perf_counter()
        call(nbk)
        first = time.perf_counter() - t0
        t_nb = best(lambda: call(nbk), args.repeat)
        print(f"{name:34s} {t_np * 1e3:10.3f}ms {t_nb * 1e3:10.3f}ms {t_np / t_nb:7.1f}x {first:9.3f}s")


if __name__ == "__main__":
    main()
