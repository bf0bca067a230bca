#!/usr/bin/env python3
"""Time the compiled kernels against the pure NumPy fallback.

Run after an editable install:

    python benchmarks/bench_backends.py [--trials 200000] [--repeats 3]

Each kernel is timed on both backends with identical Philox streams, so
the work (and the draws consumed) is the same on both sides.
"""

import argparse
import time

import numpy as np

from fascopula import _pycore

try:
    from fascopula import _core
except ImportError:
    _core = None


def philox(key0):
    return np.random.Generator(np.random.Philox(key=np.array([key0, 0], dtype=np.uint64)))


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(trials):
    d = 6
    shapes_m1 = np.ones(d)
    shapes_m25 = np.full(d, 2.5)
    spreads = np.ones(d)
    x = np.linspace(0.01, 60.0, trials)
    p = np.linspace(1e-6, 1.0 - 1e-6, trials)

    yield "lower_reg_gamma_vec (a=2.5)", lambda mod: mod.lower_reg_gamma_vec(2.5, x)
    yield "inv_lower_reg_gamma_vec (a=2.5)", lambda mod: mod.inv_lower_reg_gamma_vec(2.5, p)
    yield "copula_sample_block frank a=30", lambda mod: mod.copula_sample_block(1, 30.0, trials, d, philox(1))
    yield "copula_sample_block clayton b=5", lambda mod: mod.copula_sample_block(2, 5.0, trials, d, philox(2))
    yield "copula_sample_block gumbel t=5", lambda mod: mod.copula_sample_block(3, 5.0, trials, d, philox(3))
    yield "max_gain_block frank, m=1", lambda mod: mod.max_gain_block(1, 30.0, trials, d, shapes_m1, spreads, philox(4))
    yield "max_gain_block gumbel, m=2.5", lambda mod: mod.max_gain_block(3, 5.0, trials, d, shapes_m25, spreads, philox(5))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    if _core is None:
        print("compiled backend unavailable; timing the python backend only")

    width = 44
    header = f"{'kernel':<{width}} {'python':>10} {'compiled':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call in cases(args.trials):
        t_py = best_of(lambda: call(_pycore), args.repeats)
        if _core is not None:
            t_cy = best_of(lambda: call(_core), args.repeats)
            print(f"{name:<{width}} {t_py * 1e3:>8.1f}ms {t_cy * 1e3:>8.1f}ms {t_py / t_cy:>8.2f}x")
        else:
            print(f"{name:<{width}} {t_py * 1e3:>8.1f}ms {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
