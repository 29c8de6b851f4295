"""
Compare the numba and numpy tally kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are called directly, so the DEPTHDIST_DISABLE_NUMBA flag does
not matter here. The numba kernels are warmed up before timing.
"""

import argparse
import time

import numpy as np

from depthdist import kernels

CASES = [
    ("brute", 9, kernels.brute_tally_numba, kernels.brute_tally_numpy),
    ("brute", 10, kernels.brute_tally_numba, kernels.brute_tally_numpy),
    ("motzkin", 14, kernels.motzkin_tally_numba, kernels.motzkin_tally_numpy),
    ("motzkin", 16, kernels.motzkin_tally_numba, kernels.motzkin_tally_numpy),
]


def best_of(fn, n, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(n)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    kernels.brute_tally_numba(3)
    kernels.motzkin_tally_numba(3)

    print(f"{'kernel':<8} {'n':>3} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, n, fast, slow in CASES:
        t_fast, a = best_of(fast, n, args.repeat)
        t_slow, b = best_of(slow, n, args.repeat)
        if not np.array_equal(a, b):
            raise SystemExit(f"{name}({n}): backends disagree")
        print(f"{name:<8} {n:>3} {t_fast:>10.4f} {t_slow:>10.4f} {t_slow / t_fast:>8.1f}")


if __name__ == "__main__":
    main()
