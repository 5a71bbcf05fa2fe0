"""Max and mean stretch of every oracle kind on one graph.

    python scripts/stretch_sweep.py --n 4096 --m 16384 --queries 1000
"""

from __future__ import annotations

import argparse

from pathoracle.bench import RunConfig, run_bench


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--m", type=int, default=16384)
    ap.add_argument("--weights", default="uniform_int:1:100")
    ap.add_argument("--queries", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    runs = [("basic", {"k": k}) for k in (1, 2, 3)]
    runs += [("multilevel", {"h": h}) for h in (1, 2, 3)]
    runs += [("composed", {"r": 3, "h": 2}), ("tilde", {})]
    print("oracle,params,max_stretch,mean_stretch,p99_stretch,bound,words_per_vertex,build_s")
    for kind, params in runs:
        cfg = RunConfig(model="gnm", n=args.n, m=args.m, weights=args.weights, seed=args.seed, oracle=kind,
                        queries=args.queries, verify=1.0, **params)
        s = run_bench(cfg).summary
        tag = " ".join(f"{k}={v}" for k, v in params.items())
        print(f"{kind},{tag},{s['max_stretch']:.4f},{s['mean_stretch']:.4f},{s['p99_stretch']:.4f},"
              f"{s['declared_bound']},{s['space_words_per_vertex']['total']:.2f},{s['build_seconds']:.2f}")


if __name__ == "__main__":
    main()
