#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs the hot table scans on realistic inputs (the 168-element free lattice
and a 16-element cube poset) with both backends and prints a timing table.
The first numba call includes JIT compilation; a warm-up round is timed
separately so the steady-state numbers are comparable.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import brouwerlab._kernels_numpy as k_np
from brouwerlab.formulas import parse
from brouwerlab.freedist import medvedev_algebra
from brouwerlab.order import boolean_reverse_usl
from brouwerlab.semantics import compile_program

try:
    import brouwerlab._kernels_numba as k_nb
except ImportError:
    k_nb = None


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    alg = medvedev_algebra(4).algebra
    poset = boolean_reverse_usl(4).poset
    leq = alg.leq.astype(np.uint8)
    f = parse("(p1 -> (p2 -> p3)) -> ((p1 -> p2) -> (p1 -> p3))")
    code, arg = compile_program(f, sorted(f.atoms()), alg)
    total = alg.size ** 3

    cases = [
        ("filter_upsets[2^16 masks]",
         lambda k: k.filter_upset_masks(poset.up_masks, poset.size)),
        ("arrow_table[168x168]",
         lambda k: k.upset_arrow_masks(alg.element_masks, alg.element_masks,
                                       poset.up_masks, poset.size)),
        ("residuation[168^3]",
         lambda k: k.check_residuation(leq, alg.join, alg.arrow)),
        ("distributivity[168^3]",
         lambda k: k.check_distributivity(alg.meet, alg.join)),
        ("meet_arrow_law[168^3]",
         lambda k: k.check_meet_arrow_law(alg.meet, alg.join, alg.arrow)),
        ("identity_scan[168^3 valuations]",
         lambda k: k.identity_scan(code, arg, alg.meet, alg.join, alg.arrow,
                                   alg.top, alg.bottom, 3, alg.size, 0, total)),
    ]

    backends = [("numpy", k_np)]
    if k_nb is not None:
        for name, fn in cases:       # warm-up: trigger JIT compilation
            fn(k_nb)
        backends.append(("numba", k_nb))
    else:
        print("numba unavailable; benchmarking the numpy fallback only")

    header = f"{'kernel':<34}" + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        times = []
        refs = []
        for _, mod in backends:
            dt, res = timed(lambda m=mod: fn(m), args.repeat)
            times.append(dt)
            refs.append(res)
        if len(refs) == 2:
            a, b = (np.asarray(refs[0]), np.asarray(refs[1]))
            assert np.array_equal(a, b), f"backend mismatch in {name}"
        row = f"{name:<34}" + "".join(f"{dt * 1e3:>10.2f}ms" for dt in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
