"""Compare the numba-compiled kernels with their interpreted originals.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--p-search 11] [--p-census 9]

Each workload runs the same source twice: once through the compiled
dispatcher and once through ``.py_func``. Compilation time is excluded by a
warm-up call. Results are checked for equality before any timing is shown.
"""
import argparse
import time

import numpy as np

from buratti import kernels
from buratti._jit import HAVE_NUMBA
from buratti.modular import Modulus, all_multisets


def search_sweep(fn, p, targets):
    total = 0
    for L in targets:
        counts = np.zeros(p, dtype=np.int64)
        for d, a in L.items:
            counts[d] = a
        order = np.array(L.support, dtype=np.int64)
        path = np.zeros(p, dtype=np.int64)
        used = np.zeros(p, dtype=np.int64)
        choice = np.zeros(p, dtype=np.int64)
        visited = np.zeros(p, dtype=np.uint8)
        visited[0] = 1
        state = np.zeros(2, dtype=np.int64)
        _, nodes = fn(p, counts, order, False, path, used, choice, visited, state, 10**12)
        total += int(nodes)
    return total


def census(fn, p):
    return int(fn(p, p // 2).sum())


def best_of(repeat, func, *args):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = func(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--p-search", type=int, default=11)
    ap.add_argument("--p-census", type=int, default=9)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is unavailable or disabled (BURATTI_NO_NUMBA); nothing to compare")

    targets = list(all_multisets(Modulus(args.p_search)))
    workloads = [
        (f"path_search, all {len(targets)} multisets at p={args.p_search}", search_sweep,
         kernels.path_search, (args.p_search, targets)),
        (f"cyclic_census, p={args.p_census}", census, kernels.cyclic_census, (args.p_census,)),
    ]
    print(f"{'workload':<44} {'numba s':>9} {'python s':>9} {'speedup':>8}")
    for label, runner, kernel, extra in workloads:
        runner(kernel, *extra)  # compile
        t_jit, r_jit = best_of(args.repeat, runner, kernel, *extra)
        t_py, r_py = best_of(1, runner, kernel.py_func, *extra)
        assert r_jit == r_py, f"{label}: compiled {r_jit} != interpreted {r_py}"
        print(f"{label:<44} {t_jit:>9.4f} {t_py:>9.4f} {t_py / t_jit:>7.0f}x")


if __name__ == "__main__":
    main()
