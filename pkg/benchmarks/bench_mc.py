"""Compare the numba kernels against the pure numpy fallback.

Runs the same seeded Monte Carlo workloads on both backends, checks the
success counts agree bit-for-bit, and prints the timings.

    python benchmarks/bench_mc.py [--trials N]
"""
import argparse
import time

import numpy as np

from corebound import kernels
from corebound.hypergraph import candidate_edges


def time_call(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=20_000)
    parser.add_argument("--seed", type=int, default=1234)
    args = parser.parse_args()

    if not kernels.NUMBA_ENABLED:
        parser.error("numba backend unavailable (COREBOUND_NUMBA=0 or numba missing); "
                     "nothing to compare")

    workloads = [
        ("mc_local  u=20 k=3 p=e/C r=1", "local", 20, 3, 1, "connectivity"),
        ("mc_local  u=30 k=3 p=e/C r=1", "local", 30, 3, 1, "connectivity"),
        ("mc_global v=24 k=3 p=e/C r=2", "global", 24, 3, 2, None),
        ("mc_global v=36 k=3 p=e/C r=2", "global", 36, 3, 2, None),
    ]

    # one warm-up call so JIT compilation is not billed to the numba column
    warm = np.asarray(candidate_edges(6, 3))
    kernels.mc_local_successes(warm, 6, 0.2, 1, "connectivity", 10, 0)
    kernels.mc_global_successes(warm, 6, 0.2, 2, 10, 0)

    print(f"{args.trials} trials per workload, seed {args.seed}")
    print(f"{'workload':34} {'numba':>9} {'numpy':>9} {'speedup':>8}  counts")
    for label, kind, v, k, r, pred in workloads:
        cand = np.asarray(candidate_edges(v, k))
        p = v / len(cand)
        if kind == "local":
            nb, t_nb = time_call(kernels._mc_local_nb, cand, v, p, r,
                                 kernels.PREDICATES[pred], args.trials,
                                 np.uint64(args.seed), 0)
            np_res, t_np = time_call(kernels._mc_local_np, cand, v, p, r,
                                     kernels.PREDICATES[pred], args.trials,
                                     args.seed, 0)
        else:
            nb, t_nb = time_call(kernels._mc_global_nb, cand, v, p, r,
                                 args.trials, np.uint64(args.seed), 0)
            np_res, t_np = time_call(kernels._mc_global_np, cand, v, p, r,
                                     args.trials, args.seed, 0)
        agree = "ok" if int(nb) == int(np_res) else "MISMATCH"
        print(f"{label:34} {t_nb:8.3f}s {t_np:8.3f}s {t_np / t_nb:7.1f}x  "
              f"{int(nb)} vs {int(np_res)} {agree}")


if __name__ == "__main__":
    main()
