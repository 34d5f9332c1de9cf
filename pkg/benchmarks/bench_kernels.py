"""Timing comparison of the python and compiled kernel backends.

Runs the three array kernels plus a full identity scan over a box and
prints per-backend timings.  Usage:

    python benchmarks/bench_kernels.py [--size N] [--repeat R]
"""

import argparse
import time

import numpy as np

from tsverify import kernels
from tsverify.functions import Polynomial3
from tsverify.identities import BoxFields
from tsverify.timescale import Box3, TimeScale


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(size, repeat):
    rng = np.random.Generator(np.random.PCG64(7))
    F = rng.standard_normal((size + 1,) * 3)
    results = {}
    for name in kernels.available_backends():
        kernels.set_backend(name)
        W = kernels.forward_diff3(F)
        P = kernels.prefix_sum3(W)
        s = size // 3
        results[name] = {
            "forward_diff3": _time(lambda: kernels.forward_diff3(F), repeat),
            "prefix_sum3": _time(lambda: kernels.prefix_sum3(W), repeat),
            "octant_sums": _time(lambda: kernels.octant_sums(P, s, s, s), repeat),
        }
    return results


def bench_scan(size, repeat):
    ts = TimeScale.uniform(0.0, 1.0, 1.0 / size)
    box = Box3([ts, ts, ts], (0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (0.0, 0.0, 0.0))
    f = Polynomial3({"xyz": 1.0, "x^2y": 0.5, "z": 2.0})
    results = {}
    for name in kernels.available_backends():
        kernels.set_backend(name)

        def scan():
            fields = BoxFields(f, box)
            fields.max_identity_residual()
            fields.max_averaged_residual()

        results[name] = {"identity_scan": _time(scan, repeat)}
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=48, help="grid cells per axis")
    ap.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    args = ap.parse_args()

    print("backends: %s (default %s)" % (kernels.available_backends(), kernels.get_backend()))
    shape = (args.size,) * 3 + (args.repeat,)
    print("grid: %d x %d x %d cells, best of %d runs" % shape)

    kernel_rows = bench_kernels(args.size, args.repeat)
    scan_rows = bench_scan(args.size, args.repeat)
    names = sorted(kernel_rows)
    header = "%-16s" % "kernel" + "".join("%14s" % n for n in names)
    print()
    print(header)
    for key in ("forward_diff3", "prefix_sum3", "octant_sums"):
        line = "%-16s" % key
        for n in names:
            line += "%12.3fms" % (kernel_rows[n][key] * 1e3)
        print(line)
    line = "%-16s" % "identity_scan"
    for n in names:
        line += "%12.3fms" % (scan_rows[n]["identity_scan"] * 1e3)
    print(line)


if __name__ == "__main__":
    main()
