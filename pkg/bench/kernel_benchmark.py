#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python twins.

Runs the same workload through both modules and prints per-function
timings plus the speedup factor.  Results double as a smoke check: any
disagreement between the twins aborts the run.

Usage: python3 bench/kernel_benchmark.py [--graphs N] [--seed S]
"""

import argparse
import time

from toughham.generators import SplitMix64, random_2k2_free
from toughham.kernels import _fast, _pure


def make_instances(count, seed):
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        n = 8 + rng.below(5)
        p = 0.35 + rng.below(55) / 100.0
        g = random_2k2_free(n, p, rng.u64())
        out.append((g.n, g.adj))
    return out


def timed(fn, instances, repeat):
    t0 = time.perf_counter()
    results = []
    for _ in range(repeat):
        results = [fn(n, adj) for n, adj in instances]
    return results, (time.perf_counter() - t0) / repeat


def bench_function(name, instances, repeat):
    fast = getattr(_fast, name)
    pure = getattr(_pure, name)
    rf, tf = timed(fast, instances, repeat)
    rp, tp = timed(pure, instances, 1)
    assert rf == rp, f"twin disagreement in {name}"
    return tf, tp


def bench_sweep(n):
    t0 = time.perf_counter()
    rf = _fast.sweep_2k2_free(n, 3, 2, 2, 1, False, True)
    tf = time.perf_counter() - t0
    t0 = time.perf_counter()
    rp = _pure.sweep_2k2_free(n, 3, 2, 2, 1, False, True)
    tp = time.perf_counter() - t0
    assert (rf["enumerated"], rf["tough_pass"], rf["ham_pass"]) == \
           (rp["enumerated"], rp["tough_pass"], rp["ham_pass"])
    return tf, tp


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--graphs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not _fast.COMPILED:
        print("warning: compiled kernels unavailable, comparing pure to pure")

    instances = make_instances(args.graphs, args.seed)
    print(f"{args.graphs} random 2K2-free graphs on 8..12 vertices\n")
    header = f"{'function':<24}{'compiled':>12}{'pure':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name in ("toughness", "is_2k2_free", "max_independent_set",
                 "hamiltonian_cycle", "exists_cycle_cover"):
        tf, tp = bench_function(name, instances, args.repeat)
        print(f"{name:<24}{tf * 1e3:>10.1f}ms{tp * 1e3:>10.1f}ms"
              f"{tp / tf:>9.1f}x")
    tf, tp = bench_sweep(6)
    print(f"{'sweep_2k2_free (n=6)':<24}{tf * 1e3:>10.1f}ms{tp * 1e3:>10.1f}ms"
          f"{tp / tf:>9.1f}x")


if __name__ == "__main__":
    main()
