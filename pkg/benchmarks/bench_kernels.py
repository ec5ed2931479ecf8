"""Time the numba and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py            # default sizes
    python benchmarks/bench_kernels.py --quick    # smaller inputs, fewer repeats
"""

from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from hadminors.catalog import paley_hadamard, projective_plane_13
from hadminors.combinatorics import binomial_table, level_tables
from hadminors.kernels import BACKENDS, get_backend


def cases(quick: bool):
    rng = np.random.default_rng(1)
    H12 = np.ascontiguousarray(paley_hadamard(11).entries, dtype=np.int64)
    P13 = np.ascontiguousarray(projective_plane_13().entries, dtype=np.int64)
    A, k = (H12, 6) if quick else (P13, 7)
    n = A.shape[0]
    lv = level_tables(n)
    binom = binomial_table(n)
    rows = math.comb(n, k) if not quick else 200
    stack = rng.choice(np.array([-1, 1], dtype=np.int64), size=(20_000 if quick else 200_000, 9, 9))
    words = rng.integers(0, 1 << 62, size=(1 << 14 if quick else 1 << 17, 1), dtype=np.int64).astype(np.uint64)
    return {
        f"algd_histogram n={n} k={k} rows={rows}": lambda K: K.algd_histogram(A, k, 0, rows, *lv, binom),
        f"alga_histogram n={n} k={k} rows={rows // 4}": lambda K: K.alga_histogram(A, k, 0, rows // 4, binom),
        f"bareiss_det_batch {stack.shape[0]} x 9x9": lambda K: K.bareiss_det_batch(stack),
        f"pm1_normalized_dets {words.shape[0]} x 7x7": lambda K: K.pm1_normalized_dets(words, 7),
        f"pm1_gf2_even {words.shape[0]} x 7x7": lambda K: K.pm1_gf2_even(words, 7),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    repeat = 1 if args.quick else args.repeat
    backends = {name: get_backend(name) for name in BACKENDS}
    for fn in cases(True).values():  # compile / load the numba cache outside the timings
        fn(backends["numba"])

    print(f"{'case':48s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, fn in cases(args.quick).items():
        t = {b: min(timeit.repeat(lambda: fn(K), number=1, repeat=repeat)) for b, K in backends.items()}
        print(f"{name:48s} {t['numba']:10.4f} {t['numpy']:10.4f} {t['numpy'] / t['numba']:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
