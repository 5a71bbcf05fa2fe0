"""Probe counts of the graph-free oracle as n grows.

    python scripts/tilde_probe.py --sizes 4096 16384 65536
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from pathoracle.graph import generate_graph
from pathoracle.multilevel import build_lambda_tilde


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[4096, 16384, 65536])
    ap.add_argument("--queries", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("n,h,max_probes,mean_probes,probe_limit,words_per_n_h,build_s")
    for n in args.sizes:
        g = generate_graph("gnm", n, 2 * n, ("uniform_int", 1, 100), seed=args.seed)
        t0 = time.perf_counter()
        o = build_lambda_tilde(g, seed=args.seed)
        build_s = time.perf_counter() - t0
        rng = random.Random(args.seed)
        probes = [o.query(rng.randrange(n), rng.randrange(n)).probes for _ in range(args.queries)]
        print(f"{n},{o.h},{max(probes)},{statistics.mean(probes):.2f},{4 * o.h},"
              f"{o.space.total_words / (n * o.h):.3f},{build_s:.1f}")


if __name__ == "__main__":
    main()
