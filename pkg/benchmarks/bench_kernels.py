#!/usr/bin/env python3
"""Benchmark the JIT kernels against the pure-numpy fallback.

Times exact F_p rank and matmul on the shapes the toolkit actually runs:
small Monte Carlo blocks, mid-size decodability blocks, and one large
structured reception matrix.  Run:

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from xcdof.fieldmath import DEFAULT_PRIME
from xcdof.fieldmath import _kernels_numba, _kernels_numpy

P = np.uint64(DEFAULT_PRIME)


def bench(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def structured_block(rng, rounds=20, slot_rows=6, round_cols=19, couple_rows=30):
    """Block-diagonal round structure plus dense coupling rows, the shape of
    a full reception matrix."""
    rows = rounds * slot_rows + couple_rows
    cols = rounds * round_cols
    a = np.zeros((rows, cols), np.uint64)
    for k in range(rounds):
        a[k * slot_rows : (k + 1) * slot_rows, k * round_cols : (k + 1) * round_cols] = (
            rng.integers(0, DEFAULT_PRIME, size=(slot_rows, round_cols), dtype=np.uint64)
        )
    a[rounds * slot_rows :, :] = rng.integers(
        0, DEFAULT_PRIME, size=(couple_rows, cols), dtype=np.uint64
    )
    return a


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.Generator(np.random.Philox(key=42))

    cases = {
        "rank 24x48 (Monte Carlo block)": rng.integers(
            0, DEFAULT_PRIME, size=(24, 48), dtype=np.uint64
        ),
        "rank 200x220 (dense)": rng.integers(
            0, DEFAULT_PRIME, size=(200, 220), dtype=np.uint64
        ),
        "rank 150x380 (structured reception)": structured_block(rng),
    }
    mm = (
        rng.integers(0, DEFAULT_PRIME, size=(64, 64), dtype=np.uint64),
        rng.integers(0, DEFAULT_PRIME, size=(64, 64), dtype=np.uint64),
    )

    _kernels_numba.warmup()
    print(f"{'case':<40} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for name, mat in cases.items():
        njit_t = bench(
            lambda: _kernels_numba.rank_destructive(mat.copy(), P), repeat=args.repeat
        )
        np_t = bench(
            lambda: _kernels_numpy.rank_destructive(mat.copy(), P), repeat=args.repeat
        )
        same = _kernels_numba.rank_destructive(mat.copy(), P) == _kernels_numpy.rank_destructive(
            mat.copy(), P
        )
        assert same, name
        print(f"{name:<40} {njit_t*1e3:>10.2f}ms {np_t*1e3:>10.2f}ms {np_t/njit_t:>8.1f}x")

    njit_t = bench(lambda: _kernels_numba.matmul(mm[0], mm[1], P), repeat=args.repeat)
    np_t = bench(lambda: _kernels_numpy.matmul(mm[0], mm[1], P), repeat=args.repeat)
    assert np.array_equal(
        _kernels_numba.matmul(mm[0], mm[1], P), _kernels_numpy.matmul(mm[0], mm[1], P)
    )
    print(f"{'matmul 64x64x64':<40} {njit_t*1e3:>10.2f}ms {np_t*1e3:>10.2f}ms {np_t/njit_t:>8.1f}x")


if __name__ == "__main__":
    main()
