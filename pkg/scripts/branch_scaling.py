"""Median |Branch_1|/n and |P_1| across doubling n for the two-level oracle.

    python scripts/branch_scaling.py --sizes 1024 2048 4096 8192 --seeds 20
"""

from __future__ import annotations

import argparse
import statistics

from pathoracle.graph import generate_graph, parse_weight_mode
from pathoracle.multilevel import build_hierarchy, one_third_pairs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[1024, 2048, 4096, 8192])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--density", type=int, default=4, help="m = density * n")
    ap.add_argument("--model", default="gnm")
    ap.add_argument("--weights", default="uniform_int:1:100")
    args = ap.parse_args()

    print("n,median_branch_per_n,median_pairs,rho1,rho2,branch_reference_per_n")
    for n in args.sizes:
        br, pc = [], []
        for seed in range(args.seeds):
            g = generate_graph(args.model, n, args.density * n, parse_weight_mode(args.weights), seed=seed)
            hier = build_hierarchy(g, 2, seed=seed)
            lp = one_third_pairs(g, hier, 1, retain_balls=False)
            br.append(lp.branch_count / n)
            pc.append(lp.pair_count)
        r1, r2 = hier.rhos
        print(f"{n},{statistics.median(br):.6g},{statistics.median(pc)},{r1:.2f},{r2:.2f},{r1**4 / r2**3 / n:.4g}")


if __name__ == "__main__":
    main()
