#!/usr/bin/env python3
"""Time the compiled kernels against the pure-numpy fallback on the shapes
the wrapper search actually produces, and print a speedup table.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from fireworks_fs._kernels import _core, fallback


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_knn(repeats):
    cases = [
        ("knn 1617x693 d=3 k=5", 1617, 693, 3, 5, 7),
        ("knn 187x80 d=3 k=5", 187, 80, 3, 5, 2),
        ("knn 500x500 d=19 k=5", 500, 500, 19, 5, 7),
    ]
    rows = []
    rng = np.random.default_rng(0)
    for label, n_train, n_query, d, k, classes in cases:
        train_x = rng.random((n_train, d))
        train_y = rng.integers(0, classes, size=n_train)
        queries = rng.random((n_query, d))

        args = (train_x, train_y, queries, k, classes)
        expected = np.asarray(fallback.knn_predict_batch(*args))
        got = np.asarray(_core.knn_predict_batch(*args))
        assert np.array_equal(expected, got), label

        slow = timeit(lambda: fallback.knn_predict_batch(*args), repeats)
        fast = timeit(lambda: _core.knn_predict_batch(*args), repeats)
        rows.append((label, slow, fast))
    return rows


def bench_box(repeats):
    cases = [
        ("box counts 2310x19", 2310, 19),
        ("box counts 100000x2", 100_000, 2),
    ]
    rows = []
    rng = np.random.default_rng(1)
    for label, n, d in cases:
        points = rng.random((n, d))
        scales = [2.0 ** -i for i in range(1, 11)]

        def run(impl):
            return [impl.box_sum_sq(points, r) for r in scales]

        assert run(fallback) == run(_core), label
        slow = timeit(lambda: run(fallback), repeats)
        fast = timeit(lambda: run(_core), repeats)
        rows.append((label, slow, fast))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats, best-of (default: 5)")
    args = parser.parse_args()

    rows = bench_knn(args.repeats) + bench_box(args.repeats)
    width = max(len(r[0]) for r in rows)
    print(f"{'case'.ljust(width)}  fallback(ms)  compiled(ms)  speedup")
    for label, slow, fast in rows:
        print(
            f"{label.ljust(width)}  {slow * 1e3:12.2f}  {fast * 1e3:12.2f}"
            f"  {slow / fast:6.1f}x"
        )


if __name__ == "__main__":
    main()
