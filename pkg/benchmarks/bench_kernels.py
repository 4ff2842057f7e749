"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call per signature includes compilation (or a cache load);
it is reported separately and excluded from the steady-state timings.
"""
import argparse
import time

import numpy as np

from harqcache import _kernels_numba as nb
from harqcache import _kernels_numpy as npk
from harqcache import channel


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    grid = channel.build_cell_grid(100.0, 1000, 1e4, 2.0)
    p2s = channel.success_probabilities(2.0, grid.snrs)
    p1 = channel.success_probability(channel.LinkModel.from_db(2.0, 0.0))
    costs = np.outer(np.arange(1, 51) ** -0.8, np.linspace(60.0, 23.0, 21))
    return {
        "delay profiles, N=20, k=1000": lambda k: k.delay_profiles(20, p1, p2s),
        "delay profiles, N=200, k=100": lambda k: k.delay_profiles(200, p1, p2s[::10]),
        "nu table, N=300": lambda k: k.nu_table(300, p1, 0.6),
        "monte carlo, N=20, 1e5 runs": lambda k: k.simulate_runs(20, 10, p1, 0.6, np.uint64(1), 0, 100_000),
        "knapsack, F=50, N=20, C=400": lambda k: k.mcknap(costs, 400),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':32s} {'first numba':>12s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, call in cases().items():
        t0 = time.perf_counter()
        call(nb)
        first = time.perf_counter() - t0
        t_nb = best_of(lambda: call(nb), args.repeat)
        t_np = best_of(lambda: call(npk), args.repeat)
        print(f"{name:32s} {first:12.4f} {t_nb:10.5f} {t_np:10.5f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
