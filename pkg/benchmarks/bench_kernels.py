#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy fallbacks.

Workloads come from real call sites: bulk power maps, subgroup closure, and
conjugacy labeling over the PSL(2,13) Cayley table (order 1092), plus keyed
matrix multiplication over PSL(2,61) (order 113460).  Run after installing
the package:

    python3 benchmarks/bench_kernels.py [--repeat N]

The active default path is whatever GROUPROOTS_KERNELS selects; both
implementations are imported explicitly here, so the comparison is
independent of that flag.
"""

import argparse
import time

import numpy as np

from grouproots import kernels
from grouproots.fields import field_new
from grouproots.groups import _TableOps
from grouproots.psl2 import psl2


def _timeit(fn, args, repeat):
    fn(*args)  # warm (JIT compile on the numba side)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    impls = kernels.implementations()
    if "numba" not in impls:
        print("numba unavailable; nothing to compare")
        return

    print("building workloads (PSL(2,13) table, PSL(2,61) keyed)...")
    small = psl2(field_new(13))
    ids = np.arange(small.order, dtype=np.int64)
    table = small.mul_vec(ids[:, None], ids[None, :]).astype(np.int64)
    tops = _TableOps(table)
    rng = np.random.default_rng(0)
    seed = rng.integers(1, small.order, size=3)

    big = psl2(field_new(61))
    mops = big.meta["matrix_ops"]
    f = field_new(61)
    a_ids = rng.integers(0, big.order, size=200_000).astype(np.int64)
    b_ids = rng.integers(0, big.order, size=200_000).astype(np.int64)

    cases = [
        ("table_pow_all(r=7), n=1092", "table_pow_all", (table, 7)),
        ("table_closure(3 gens), n=1092", "table_closure", (table, seed)),
        ("table_conj_labels, n=1092", "table_conj_labels", (table, tops.inverse)),
        ("table_centralizer_sizes, n=1092", "table_centralizer_sizes", (table,)),
        ("table_orders, n=1092", "table_orders", (table,)),
        (
            "mat2_mul_resolve_canon, 200k pairs over GF(61)",
            "mat2_mul_resolve_canon",
            (
                mops.mats, a_ids, b_ids, f.add_t, f.mul_t, f.neg_t, np.int64(61),
                mops._resolver.sorted_keys, mops._resolver.sorted_pos,
            ),
        ),
    ]

    print(f"{'workload':<46} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for label, name, wargs in cases:
        t_np = _timeit(impls["numpy"][name], wargs, args.repeat)
        t_nb = _timeit(impls["numba"][name], wargs, args.repeat)
        print(f"{label:<46} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
