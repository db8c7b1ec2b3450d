"""Compare the compiled kernels against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from objdetect import kernels
from objdetect.kernels import pykernels


def timeit(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    rng = np.random.default_rng(0)
    gray = rng.integers(0, 256, (480, 640), dtype=np.uint8)
    n_edges = 20_000
    xs = rng.uniform(0, 639, n_edges)
    ys = rng.uniform(0, 479, n_edges)
    gx = rng.normal(0, 60, n_edges)
    gy = rng.normal(0, 60, n_edges)
    obj = rng.integers(0, 256, (500, 64), dtype=np.uint8)
    scene = rng.integers(0, 256, (2000, 64), dtype=np.uint8)

    cases = [
        ("fast_score_map 640x480", (gray,), "fast_score_map"),
        ("hough_vote 20k edges r10..60", (xs, ys, gx, gy, 10, 60, 480, 640), "hough_vote"),
        ("hamming_nn 500x2000", (obj, scene), "hamming_nn"),
    ]

    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':<32} {'active':>10} {'python':>10} {'speedup':>8}")
    for label, args, name in cases:
        fast = timeit(getattr(kernels, name), *args)
        slow = timeit(getattr(pykernels, name), *args)
        print(f"{label:<32} {fast * 1e3:>8.1f}ms {slow * 1e3:>8.1f}ms {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
