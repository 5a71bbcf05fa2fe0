"""Benchmark workloads: build an oracle, run queries, verify, report.

Everything derives from one seed: the build seed, the random query pairs and
the verified subset are drawn in that order from ``Random(seed)``. Timings go
to the JSON summary only, so the CSV is byte-identical across reruns.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import os
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .answer import OracleAnswer, multilevel_bound
from .basic import BasicOracle, build_basic
from .dppro import DPPRO, build_dppro
from .errors import ParameterError
from .graph import PathWalk, WeightedGraph, density_lambda, generate_graph, parse_weight_mode, read_graph, \
    read_pairs, validate_walk
from .multilevel import MultiLevelOracle, audit_branch_confinement, build_lambda_tilde, build_multilevel
from .spanner import ComposedOracle, build_composed, load_spanner
from .store import load_oracle, save_oracle
from .verify import ExactBaseline, exact_distances

log = logging.getLogger(__name__)

SCHEMA = 1
COLUMNS = ["idx", "u", "v", "reported", "exact", "stretch", "bound", "hops", "meet_level", "probes",
           "ball_explored"]
ORACLES = ("dppro", "basic", "multilevel", "tilde", "composed", "exact-baseline")
# relative slack on bound checks; integer weights make every comparison exact
BOUND_RTOL = 1e-9


@dataclass
class RunConfig:
    command: str = "bench"
    graph_in: str | None = None
    model: str = "gnm"
    n: int = 0
    m: int = 0
    weights: str = "unit"
    oracle: str = "multilevel"
    k: int = 2
    h: int | None = None
    r: int = 2
    seed: int = 0
    queries: int = 1000
    pairs_file: str | None = None
    verify: float | None = None
    out: str | None = None
    json_out: str | None = None
    save: str | None = None
    load: str | None = None
    spanner_file: str | None = None
    spanner_stretch: float | None = None
    sampling: str = "uniform"


class PairOracle:
    """Adapter giving a DPPRO the common ``query -> OracleAnswer`` shape."""

    bound = 1

    def __init__(self, dppro: DPPRO):
        self.dppro = dppro

    def query(self, u: int, v: int) -> OracleAnswer:
        if u == v:
            return OracleAnswer(PathWalk.single(u))
        stats = {"probes": 0}
        walk = self.dppro.query(u, v, stats=stats)
        return OracleAnswer(walk, 0, emit_probes=stats["probes"])


def thread_count() -> int:
    raw = os.environ.get("PATHORACLE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParameterError(f"PATHORACLE_THREADS={raw!r} is not an integer") from None


def load_graph(cfg: RunConfig) -> WeightedGraph:
    if cfg.graph_in:
        return read_graph(cfg.graph_in, key_seed=cfg.seed)
    if cfg.n <= 0:
        raise ParameterError("need --in FILE or generator options (--model, --n)")
    return generate_graph(cfg.model, cfg.n, cfg.m, parse_weight_mode(cfg.weights), seed=cfg.seed)


def make_queries(g: WeightedGraph, count: int, rng: random.Random) -> list[tuple[int, int]]:
    return [(rng.randrange(g.n), rng.randrange(g.n)) for _ in range(count)]


def build_oracle(cfg: RunConfig, g: WeightedGraph, pairs, seed: int):
    kind = cfg.oracle
    if kind == "dppro":
        return PairOracle(build_dppro(g, [(u, v) for u, v in pairs if u != v]))
    if kind == "basic":
        return build_basic(g, cfg.k, seed=seed, mode=cfg.sampling)
    if kind == "multilevel":
        return build_multilevel(g, cfg.h or 2, seed=seed)
    if kind == "tilde":
        if cfg.h:
            return build_multilevel(g, cfg.h, "tilde", seed=seed)
        return build_lambda_tilde(g, seed=seed)
    if kind == "composed":
        spanner = None
        if cfg.spanner_file:
            if cfg.spanner_stretch is None:
                raise ParameterError("an external spanner needs --spanner-stretch")
            spanner = load_spanner(g, cfg.spanner_file, cfg.spanner_stretch)
        return build_composed(g, cfg.r, cfg.h or 2, seed=seed, spanner=spanner)
    if kind == "exact-baseline":
        return ExactBaseline(g)
    raise ParameterError(f"unknown oracle {kind!r}; choose from {', '.join(ORACLES)}")


def answer_bound(oracle, ans: OracleAnswer) -> float:
    """Stretch bound for this answer, sharpened by its meet level where one applies."""
    if isinstance(oracle, MultiLevelOracle):
        return multilevel_bound(ans.meet_level)
    if isinstance(oracle, ComposedOracle):
        return oracle.level_bound(ans.meet_level)
    return oracle.bound


def space_breakdown(oracle, n: int) -> dict:
    """Stored words per vertex, split by table."""
    if isinstance(oracle, PairOracle):
        rep = oracle.dppro.space_report()
        parts = {"home": rep.n_words, "branch": rep.branch_words, "pairs": rep.pair_words}
    elif isinstance(oracle, BasicOracle):
        s = oracle.space
        parts = {"forest": s.forest_words, "tz": s.tz_words, "dppro": s.dppro_words}
    elif isinstance(oracle, (MultiLevelOracle, ComposedOracle)):
        inner = oracle.inner if isinstance(oracle, ComposedOracle) else oracle
        s = inner.space
        parts = {"forests": s.forest_words, "top": s.top_words}
        for i, w in enumerate(s.level_words, 1):
            parts[f"level_{i}"] = w
    else:
        parts = {}
    out = {k: v / n for k, v in parts.items()}
    out["total"] = sum(parts.values()) / n
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return str(int(x)) if x.is_integer() else repr(x)
    return str(x)


@dataclass
class BenchResult:
    summary: dict
    rows: list[list]
    violations: list[str]


def run_bench(cfg: RunConfig, g: WeightedGraph | None = None, oracle=None) -> BenchResult:
    if g is None:
        g = load_graph(cfg)
    master = random.Random(cfg.seed)
    build_seed = master.getrandbits(32)
    if cfg.pairs_file:
        pairs = read_pairs(cfg.pairs_file)
        for u, v in pairs:
            if not (0 <= u < g.n and 0 <= v < g.n):
                raise ParameterError(f"query pair ({u},{v}) out of range")
    else:
        pairs = make_queries(g, cfg.queries, master)
    frac = cfg.verify if cfg.verify is not None else (1.0 if g.n <= 4096 else 0.1)
    if not 0 <= frac <= 1:
        raise ParameterError("--verify must lie in [0, 1]")
    checked = [master.random() < frac for _ in pairs]

    t0 = time.perf_counter()
    if oracle is None and cfg.load:
        oracle = load_oracle(cfg.load)
    if oracle is None:
        oracle = build_oracle(cfg, g, pairs, build_seed)
    build_s = time.perf_counter() - t0
    log.info("built %s in %.2fs", type(oracle).__name__, build_s)
    if cfg.save:
        save_oracle(oracle, cfg.save)

    threads = thread_count()
    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            answers = list(pool.map(lambda p: oracle.query(*p), pairs))
    else:
        answers = [oracle.query(u, v) for u, v in pairs]
    query_s = time.perf_counter() - t0

    exact = exact_distances(g, [u for (u, _), c in zip(pairs, checked) if c])
    rows, violations, stretches = [], [], []
    probes = Counter()
    for i, ((u, v), ans, c) in enumerate(zip(pairs, answers, checked)):
        validate_walk(g, ans.walk, u, v)
        bound = answer_bound(oracle, ans)
        d = s = None
        if c:
            d = float(exact[u][v])
            s = ans.reported_length / d if d > 0 else 1.0
            stretches.append(s)
            if ans.reported_length < d * (1 - BOUND_RTOL) or ans.reported_length > bound * d * (1 + BOUND_RTOL):
                violations.append(f"query {i} ({u},{v}): reported {ans.reported_length} exact {d} bound {bound}")
        probes[ans.probes] += 1
        rows.append([i, u, v, ans.reported_length, d, s, bound, ans.hops, ans.meet_level, ans.probes,
                     ans.ball_explored])

    st = np.asarray(stretches) if stretches else np.asarray([math.nan])
    summary = {
        "schema": SCHEMA,
        "config": asdict(cfg),
        "graph": {"n": g.n, "m": g.m, "lambda": density_lambda(g)},
        "oracle": type(oracle).__name__,
        "declared_bound": getattr(oracle, "bound", None),
        "queries": len(pairs),
        "verified": len(stretches),
        "max_stretch": float(np.max(st)),
        "mean_stretch": float(np.mean(st)),
        "p99_stretch": float(np.percentile(st, 99)),
        "probe_histogram": {str(k): probes[k] for k in sorted(probes)},
        "meet_levels": dict(sorted(Counter(str(a.meet_level) for a in answers).items())),
        "mean_ball_explored": float(np.mean([a.ball_explored for a in answers])) if answers else 0.0,
        "build_seconds": build_s,
        "query_seconds": query_s,
        "threads": threads,
        "space_words_per_vertex": space_breakdown(oracle, g.n),
        "violations": len(violations),
    }
    return BenchResult(summary, rows, violations)


def write_csv(rows: list[list], fh) -> None:
    fh.write(f"schema={SCHEMA}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow([_fmt(x) for x in row])


def audit_record(oracle) -> dict:
    if isinstance(oracle, ComposedOracle):
        oracle = oracle.inner
    if not isinstance(oracle, MultiLevelOracle):
        raise ParameterError("audit needs a multilevel, tilde or composed oracle")
    hier = oracle.hierarchy
    levels = []
    for i in range(1, oracle.h + 1):
        rho = hier.rhos[i - 1]
        rec = {"level": i, "landmarks": len(hier.levels[i - 1]), "rho": rho,
               "pairs": oracle.space.pair_counts[i - 1], "branch": oracle.space.branch_counts[i - 1]}
        if i < oracle.h:
            nxt = hier.rhos[i]
            rec["pairs_reference"] = rho ** 2 / nxt
            rec["branch_reference"] = rho ** 4 / nxt ** 3
            rec["confinement_violations"] = audit_branch_confinement(oracle, i)
        else:
            rec["confinement_violations"] = 0
        levels.append(rec)
    return {
        "schema": SCHEMA,
        "variant": oracle.variant,
        "h": oracle.h,
        "n": oracle.n,
        "levels": levels,
        "violations": sum(r["confinement_violations"] for r in levels),
    }


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
