"""Compare the numba and numpy paths of the isometry-search vector kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--bound B]

Results are checked for equality before timings are reported.
"""
import argparse
import time

import numpy as np

from torus_lattices import _kernels

GRAMS = {
    "H5": [[2, 1], [1, -2]],
    "U+<-2>^2": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -2, 0], [0, 0, 0, -2]],
    "U+A2(-1)": [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 3], [1, 1, 3, 0]],
}


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--bound", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.HAS_NUMBA:
        print("numba is not installed; only the numpy path is available")
    print(f"{'lattice':<10} {'kernel':<16} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, rows in GRAMS.items():
        g = np.array(rows, dtype=np.int64)
        cases = {
            "vectors_of_norm": (
                lambda: _kernels.vectors_of_norm_numpy(g, args.bound, 0),
                lambda: _kernels.vectors_of_norm_numba(g, args.bound, 0)),
        }
        cand = _kernels.vectors_of_norm_numpy(g, args.bound, int(g[0, 0]))
        cases["pair_products"] = (
            lambda: _kernels.pair_products_numpy(cand, g, cand),
            lambda: _kernels.pair_products_numba(cand, g, cand))
        for kernel, (np_fn, nb_fn) in cases.items():
            t_np, r_np = best_of(np_fn, args.repeat)
            if not _kernels.HAS_NUMBA:
                print(f"{name:<10} {kernel:<16} {t_np * 1e3:>10.3f} {'-':>10} {'-':>8}")
                continue
            nb_fn()  # compile
            t_nb, r_nb = best_of(nb_fn, args.repeat)
            if not np.array_equal(r_np, r_nb):
                raise SystemExit(f"{name}/{kernel}: numba and numpy disagree")
            print(f"{name:<10} {kernel:<16} {t_np * 1e3:>10.3f} {t_nb * 1e3:>10.3f} "
                  f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
