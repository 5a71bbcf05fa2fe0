"""Single-level landmark oracle with stretch ``6k - 1``.

Vertices are sampled as landmarks; every vertex keeps its shortest path to
the nearest landmark (a forest). A Thorup-Zwick oracle runs on the metric
closure of the landmarks, and a DPPRO over the input graph resolves each
landmark-graph edge that TZ can report into a real shortest path.

A query first runs two truncated Dijkstra searches deciding whether one
endpoint lies in the other's ball (strictly closer than its landmark). If so
the exact path is returned; otherwise the answer is
``u -> l(u) -> [TZ walk, resolved by the DPPRO] -> l(v) -> v``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .answer import OracleAnswer, basic_bound
from .dppro import DPPRO
from .errors import DisconnectedGraphError, ParameterError
from .graph import PathWalk, WeightedGraph, draw_keys
from .paths import Forest, nearest_source_forest, targets_search, tree_path, truncated_ball_search
from .tz import TZOracle, UnionSpanner, build_tz

CLAMP_C = 3.0


def choose_rho(n: int, k: int, c: float = CLAMP_C) -> float:
    """``n**(k/(2k+2)) / k`` clamped to ``[c ln n, n]``."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    raw = n ** (k / (2 * k + 2)) / k
    return min(max(raw, c * math.log(n)), float(n))


@dataclass
class LandmarkSet:
    members: list[int]
    forest: Forest
    mode: str
    rho: float
    expected_virtual: float
    member_set: frozenset = field(init=False)

    def __post_init__(self):
        self.member_set = frozenset(self.members)

    @property
    def nearest(self) -> list[int]:
        return self.forest.nearest

    @property
    def dist(self) -> list[float]:
        return self.forest.dist

    def __len__(self) -> int:
        return len(self.members)


def selection_probabilities(g: WeightedGraph, rho: float, mode: str) -> list[float]:
    n = g.n
    if mode == "uniform":
        return [rho / n] * n
    if mode == "degree_weighted":
        lam = g.m / n
        return [min(1.0, math.ceil(g.degree(v) / lam) * rho / n) for v in range(n)]
    raise ParameterError(f"unknown sampling mode {mode!r}")


def sample_landmarks(g: WeightedGraph, rho: float, mode: str = "uniform", seed: int = 0,
                     members=None) -> LandmarkSet:
    """Independent per-vertex landmark draws plus the nearest-landmark forest.

    ``degree_weighted`` selects ``v`` with probability
    ``min(1, ceil(deg(v)/lambda) * rho/n)`` where ``lambda = m/n``; this is the
    vertex-splitting rule for graphs of unbounded arboricity.
    ``expected_virtual`` is the expected number of selected copies under
    splitting (``rho`` in uniform mode). ``members`` overrides the draw.
    """
    n = g.n
    if not 0 < rho <= n:
        raise ParameterError(f"rho={rho} outside (0, {n}]")
    probs = selection_probabilities(g, rho, mode)
    if mode == "degree_weighted":
        lam = g.m / n
        expected_virtual = sum(math.ceil(g.degree(v) / lam) for v in range(n)) * rho / n
    else:
        expected_virtual = rho
    if members is None:
        rng = random.Random(seed)
        members = [v for v in range(n) if rng.random() < probs[v]]
        if not members:
            members = [0]
    members = sorted(set(members))
    return LandmarkSet(members, nearest_source_forest(g, members), mode, rho, expected_virtual)


def metric_closure(g: WeightedGraph, members: list[int], rng: random.Random):
    """Complete graph on ``members`` (vertex i is ``members[i]``) weighted by distances in ``g``.

    Also returns the per-member search trees, which hold the canonical paths.
    """
    trees = {s: targets_search(g, s, members) for s in members}
    L = len(members)
    edges = [(i, j, trees[members[i]].dist[members[j]]) for i in range(L) for j in range(i + 1, L)]
    return WeightedGraph(L, edges, keys=draw_keys(rng, len(edges))), trees


@dataclass
class BasicSpace:
    forest_words: int
    tz_words: int
    dppro_words: int
    landmark_count: int
    spanner_size: int
    # k^2 |L|^(2+2/k) / n; the construction aims to keep this O(1)
    budget_ratio: float

    @property
    def total_words(self) -> int:
        return self.forest_words + self.tz_words + self.dppro_words


class BasicOracle:
    def __init__(self, g: WeightedGraph, k: int, landmarks: LandmarkSet, tz: TZOracle, closure: WeightedGraph,
                 spanner: UnionSpanner, dppro: DPPRO):
        self.g = g
        self.k = k
        self.landmarks = landmarks
        self.tz = tz
        self.closure = closure
        self.spanner = spanner
        self.dppro = dppro
        self.bound = basic_bound(k)
        self.closure_index = {v: i for i, v in enumerate(landmarks.members)}
        L = len(landmarks)
        self.space = BasicSpace(
            forest_words=4 * g.n,
            tz_words=2 * tz.bunch_total + 2 * sum(len(p) for p in tz.cluster_pred.values()),
            dppro_words=dppro.space_report().total_words,
            landmark_count=L,
            spanner_size=spanner.size,
            budget_ratio=k * k * L ** (2 + 2 / k) / g.n,
        )

    def ball_test(self, src: int, dst: int):
        lm = self.landmarks
        return truncated_ball_search(self.g, src, lm.member_set, target=dst, radius=lm.dist[src])

    def query(self, u: int, v: int) -> OracleAnswer:
        if u == v:
            return OracleAnswer(PathWalk.single(u))
        g = self.g
        sizes = []
        for a, b in ((u, v), (v, u)):
            res = self.ball_test(a, b)
            sizes.append(len(res.explored))
            if res.outcome == "found-target":
                walk = res.path_to_meeting(g)
                if a != u:
                    walk = walk.reversed()
                return OracleAnswer(walk, 0, ball_explored=sum(sizes), ball_sizes=tuple(sizes))
        forest = self.landmarks.forest
        lu, lv = forest.nearest[u], forest.nearest[v]
        probes = 2
        emit = {"probes": 0}
        head = forest.path_to_root(u)
        tail = forest.path_to_root(v).reversed()
        parts = [head]
        if lu != lv:
            idx = self.closure_index
            lwalk = self.tz.query(idx[lu], idx[lv], stats=emit)
            probes += emit["probes"]
            emit["probes"] = 0
            members = self.landmarks.members
            zs = [members[i] for i in lwalk.vertices]
            for a, b in zip(zs, zs[1:]):
                parts.append(self.dppro.query(a, b, stats=emit))
        parts.append(tail)
        walk = PathWalk.concat(parts)
        return OracleAnswer(walk, 1, probes=probes, emit_probes=emit["probes"] + head.hop_count + tail.hop_count,
                            ball_explored=sum(sizes), ball_sizes=tuple(sizes))


def build_basic(g: WeightedGraph, k: int, seed: int = 0, mode: str = "uniform", rho: float | None = None,
                landmarks=None, tz_retries: int = 8, cap_constant: float = 4.0) -> BasicOracle:
    if k < 1:
        raise ParameterError("k must be >= 1")
    if not g.is_connected():
        raise DisconnectedGraphError("basic oracle needs a connected graph")
    rng = random.Random(seed)
    if rho is None:
        rho = choose_rho(g.n, k)
    lm = sample_landmarks(g, rho, mode, seed=rng.getrandbits(32), members=landmarks)
    members = lm.members
    closure, trees = metric_closure(g, members, rng)
    tz = build_tz(closure, k, seed=rng.getrandbits(32), size_cap_retries=tz_retries, cap_constant=cap_constant)
    spanner = tz.union_spanner()
    paths = {}
    for i, j in spanner.pairs:
        x, y = members[i], members[j]
        paths[(x, y)] = tree_path(g, trees[x].pred, x, y)
    return BasicOracle(g, k, lm, tz, closure, UnionSpanner(frozenset(paths)), DPPRO(g.n, paths))


def query_basic(o: BasicOracle, u: int, v: int) -> OracleAnswer:
    return o.query(u, v)
