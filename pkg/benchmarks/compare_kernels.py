#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Runs the same sorts on every available kernel and prints wall times plus
speedups. Counts must be identical across kernels; the script asserts it.

Usage: python benchmarks/compare_kernels.py [--quick]
"""

import argparse
import sys
import time

from entsort.bench import SourceSpec, generate
from entsort.kernel import available_kernels
from entsort.sort0 import sort0
from entsort.sortk import sortk


def time_run(fn, repeats=1):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller inputs, single repeat")
    args = parser.parse_args(argv)

    kernels = available_kernels()
    if len(kernels) < 2:
        print("only the pure-Python kernel is available; "
              "build the extension to compare (pip install -e .)")
    scale = 10_000 if args.quick else 100_000
    repeats = 1 if args.quick else 2
    cases = [
        ("uniform n=256", SourceSpec(kind="uniform", n=256, m=scale, seed=1), 0),
        ("uniform n=16", SourceSpec(kind="uniform", n=16, m=scale, seed=2), 0),
        ("zipf n=256", SourceSpec(kind="zipf", n=256, m=scale, skew=1.3,
                                  seed=3), 0),
        ("markov n=16 k=1", SourceSpec(kind="markov", n=16, m=scale,
                                       seed=4), 1),
        ("periodic n=7 k=1", SourceSpec(kind="periodic", n=7, m=scale,
                                        seed=5), 1),
    ]
    header = f"{'case':>18s} {'m':>8s} {'order':>5s}"
    for k in kernels:
        header += f" {k + ' (s)':>12s}"
    if len(kernels) == 2:
        header += f" {'speedup':>8s}"
    header += f" {'cmp/el':>8s}"
    print(header)
    for name, spec, order in cases:
        seq = generate(spec)
        times = {}
        counts = set()
        for kern in kernels:
            if order == 0:
                secs, out = time_run(lambda: sort0(seq, kernel_name=kern),
                                     repeats)
            else:
                secs, out = time_run(
                    lambda: sortk(seq, order, kernel_name=kern), repeats)
            times[kern] = secs
            counts.add(out.ledger.binary_count)
        assert len(counts) == 1, "kernels disagree on comparison counts"
        row = f"{name:>18s} {len(seq):>8d} {order:>5d}"
        for k in kernels:
            row += f" {times[k]:>12.3f}"
        if len(kernels) == 2:
            row += f" {times['python'] / times['c']:>7.1f}x"
        row += f" {counts.pop() / len(seq):>8.2f}"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
