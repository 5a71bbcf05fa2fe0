"""Path-reporting Thorup-Zwick oracle on an arbitrary host graph.

Level sets ``A_0 = V ⊇ A_1 ⊇ ... ⊇ A_{k-1} ⊇ A_k = ∅`` are nested samples
with rate ``n**(-1/k)``. A centre ``w ∈ A_i \\ A_{i+1}`` owns the cluster
``C(w) = {v : d(w, v) < d(v, A_{i+1})}``, grown by a pruned canonical Dijkstra
whose tree is kept so that ``w -> v`` paths can be reported. Bunches are the
transposed clusters. Witnesses ``p_i(v)`` are promoted to ``p_{i+1}(v)`` on
distance ties, which keeps ``p_i(v)`` inside ``B(v)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from heapq import heappop, heappush

from .errors import ParameterError
from .graph import PathWalk, WeightedGraph
from .paths import INF, nearest_source_forest, tree_path


@dataclass(frozen=True)
class UnionSpanner:
    """All host vertex pairs that are consecutive in some reportable path."""

    pairs: frozenset

    @property
    def size(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return ((u, v) if u < v else (v, u)) in self.pairs


class TZOracle:
    def __init__(self, host: WeightedGraph, k: int, levels: list[set[int]]):
        self.host = host
        self.k = k
        self.levels = levels
        self.attempts = 1
        n = host.n
        level_dist = []
        witness = []
        for i in range(k):
            f = nearest_source_forest(host, levels[i])
            level_dist.append(f.dist)
            witness.append(list(f.nearest))
        level_dist.append([INF] * n)
        for i in range(k - 2, -1, -1):
            di, dn, wi, wn = level_dist[i], level_dist[i + 1], witness[i], witness[i + 1]
            for v in range(n):
                if di[v] == dn[v]:
                    wi[v] = wn[v]
        self.level_dist = level_dist
        self.witness = witness
        self.bunch: list[dict[int, float]] = [{} for _ in range(n)]
        self.cluster_pred: dict[int, dict[int, int]] = {}
        for i in range(k):
            nxt = levels[i + 1] if i + 1 < k else set()
            for w in sorted(levels[i] - nxt):
                self._grow_cluster(w, level_dist[i + 1])

    def _grow_cluster(self, w: int, bound: list[float]) -> None:
        adj, keys = self.host.adj, self.host.keys
        dist = {w: 0.0}
        ks = {w: 0}
        pred: dict[int, int] = {}
        done = set()
        heap = [(0.0, 0, w)]
        while heap:
            d, k, x = heappop(heap)
            if x in done:
                continue
            done.add(x)
            self.bunch[x][w] = d
            for y, wt, e in adj[x]:
                if y in done:
                    continue
                nd = d + wt
                if not nd < bound[y]:
                    continue
                nk = k + keys[e]
                dy = dist.get(y, INF)
                if nd < dy or (nd == dy and nk < ks[y]):
                    dist[y] = nd
                    ks[y] = nk
                    pred[y] = e
                    heappush(heap, (nd, nk, y))
        self.cluster_pred[w] = {v: pred[v] for v in done if v != w}

    # ------------------------------------------------------------ queries

    def centre_for(self, u: int, v: int) -> tuple[int, int, int, int]:
        """Bunch-ascent loop. Returns ``(centre, a, b, probes)`` with ``a, b`` in its cluster."""
        a, b = u, v
        w = a
        i = 0
        probes = 1
        while w not in self.bunch[b]:
            i += 1
            a, b = b, a
            w = self.witness[i][a]
            probes += 2
        return w, a, b, probes

    def query(self, u: int, v: int, stats: dict | None = None) -> PathWalk:
        if u == v:
            return PathWalk.single(u)
        w, a, b, probes = self.centre_for(u, v)
        pred = self.cluster_pred[w]
        to_a = tree_path(self.host, pred, w, a)
        to_b = tree_path(self.host, pred, w, b)
        walk = to_a.reversed().then(to_b)
        if a != u:
            walk = walk.reversed()
        if stats is not None:
            stats["probes"] = stats.get("probes", 0) + probes
        return walk

    def distance_estimate(self, u: int, v: int) -> float:
        if u == v:
            return 0.0
        w, a, b, _ = self.centre_for(u, v)
        return self.bunch[a][w] + self.bunch[b][w]

    def union_spanner(self) -> UnionSpanner:
        edges = self.host.edges
        pairs = set()
        for pred in self.cluster_pred.values():
            for e in pred.values():
                a, b, _ = edges[e]
                pairs.add((a, b))
        return UnionSpanner(frozenset(pairs))

    @property
    def bunch_total(self) -> int:
        return sum(len(b) for b in self.bunch)


def size_cap(n: int, k: int, constant: float = 4.0) -> float:
    return constant * k * n ** (1 + 1 / k)


def _sample_levels(n: int, k: int, rng: random.Random) -> list[set[int]]:
    p = n ** (-1 / k)
    levels = [set(range(n))]
    for _ in range(1, k):
        levels.append({v for v in sorted(levels[-1]) if rng.random() < p})
    return levels


def build_tz(host: WeightedGraph, k: int, seed: int = 0, size_cap_retries: int = 8,
             cap_constant: float = 4.0) -> TZOracle:
    """Build, resampling until the union spanner fits the size cap.

    A draw with an empty ``A_{k-1}`` is discarded and counts as a retry. If
    every draw fails the cap the smallest union spanner seen is kept; if every
    draw had an empty top level, vertex 0 is forced into all levels.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    n = host.n
    rng = random.Random(seed)
    cap = size_cap(n, k, cap_constant)
    best = None
    best_size = math.inf
    for attempt in range(1, size_cap_retries + 2):
        levels = _sample_levels(n, k, rng)
        if not levels[-1]:
            continue
        oracle = TZOracle(host, k, levels)
        size = oracle.union_spanner().size
        if size <= cap:
            oracle.attempts = attempt
            return oracle
        if size < best_size:
            best, best_size = oracle, size
    if best is None:
        levels = _sample_levels(n, k, rng)
        for lvl in levels:
            lvl.add(0)
        best = TZOracle(host, k, levels)
    best.attempts = size_cap_retries + 1
    return best


def query_tz(o: TZOracle, u: int, v: int) -> PathWalk:
    return o.query(u, v)


def extract_union_spanner(o: TZOracle) -> UnionSpanner:
    return o.union_spanner()
