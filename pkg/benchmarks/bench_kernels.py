#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the three hot sweeps (pair witness, stabilizer, orbit partition) on both
backends and prints a timing table.  Use --heavy for the larger fields where
the numba advantage dominates (the numpy fallback there takes minutes).
"""

import argparse
import time

from lpscatter import kernels
from lpscatter.census import brute_force_count
from lpscatter.equiv import brute_force_stabilizer, brute_force_witness
from lpscatter.gftower import get_tower
from lpscatter.linpoly import LPParams, lp_poly, monomial


def first_valid_theta(tw):
    return next(t for t in range(1, tw.order) if tw.norm(t) not in (0, 1))


def scenarios(heavy: bool):
    out = []

    def stab(p, r, n):
        tw = get_tower(p, r, n)
        f = lp_poly(LPParams(tw, 1, first_valid_theta(tw)))
        return lambda: brute_force_stabilizer(f)

    def witness(p, r, n):
        tw = get_tower(p, r, n)
        f = lp_poly(LPParams(tw, 1, first_valid_theta(tw)))
        g = monomial(tw, 1)
        return lambda: brute_force_witness(f, g)

    out.append(("stabilizer q=3 n=3", stab(3, 1, 3)))
    out.append(("stabilizer q=4 n=3", stab(2, 2, 3)))
    out.append(("witness    q=3 n=3", witness(3, 1, 3)))
    out.append(("partition  q=3 n=3", lambda: brute_force_count(3, 1, 3)))
    if heavy:
        out.append(("stabilizer q=3 n=4", stab(3, 1, 4)))
        out.append(("witness    q=3 n=4", witness(3, 1, 4)))
        out.append(("partition  q=4 n=4", lambda: brute_force_count(2, 2, 4)))
    return out


def bench(fn, repeat: int) -> float:
    fn()  # warmup (includes jit compilation on the numba backend)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--heavy", action="store_true",
                        help="include the larger fields (minutes on numpy)")
    args = parser.parse_args()

    rows = []
    for name, fn in scenarios(args.heavy):
        timings = {}
        for backend in ("numba", "numpy"):
            prev = kernels.use_backend(backend)
            try:
                timings[backend] = bench(fn, args.repeat)
            finally:
                kernels.use_backend(prev)
        rows.append((name, timings["numba"], timings["numpy"]))

    print(f"{'scenario':<22}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, t_nb, t_np in rows:
        print(f"{name:<22}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
