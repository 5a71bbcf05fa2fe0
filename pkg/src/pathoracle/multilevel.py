"""Multi-level landmark oracle Λ_h and its graph-free variant Λ̃.

Levels ``L_1, ..., L_h`` are sampled independently with rates ``ρ_i / n``,
``ρ_i = n**α_i`` and ``α_i = 1 - (3/4)**(h-i+1)``. For every level a forest
of shortest paths to the nearest level landmark is stored. For ``i < h`` the
pair set ``P_i`` holds the pairs of i-landmarks where one lies in the other's
one-third ball, i.e. closer than a third of its distance to the nearest
(i+1)-landmark; a DPPRO ``D_i`` serves exact paths for ``P_i``. The top level
keeps a DPPRO over all pairs of ``L_h``.

A query climbs ``u -> l_1(u) -> l_2(l_1(u)) -> ...`` (and the same from ``v``)
until the current landmark pair is in ``P_j`` (always true at ``j = h``), then
splices the exact middle path between the two ladders.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .answer import OracleAnswer, multilevel_bound
from .dppro import DPPRO
from .errors import DisconnectedGraphError, ParameterError
from .graph import PathWalk, WeightedGraph
from .paths import Forest, ball_tree, nearest_source_forest, targets_search, tree_path, truncated_ball_search

CLAMP_C = 3.0


def level_exponents(n: int, h: int, c: float = CLAMP_C) -> list[tuple[float, float]]:
    """``(α_i, ρ_i)`` for ``i = 1..h`` with ``ρ_i`` clamped to ``[c ln n, n]``."""
    if h < 1 or n < 2:
        raise ParameterError("need h >= 1 and n >= 2")
    out = []
    lo = c * math.log(n)
    for i in range(1, h + 1):
        alpha = 1 - 0.75 ** (h - i + 1)
        out.append((alpha, min(max(n ** alpha, lo), float(n))))
    return out


def tilde_levels(n: int, log_base: float = 2.0) -> int:
    """``ceil(log_{4/3}(log n + 1))``."""
    return math.ceil(math.log(math.log(n, log_base) + 1) / math.log(4 / 3))


@dataclass
class LandmarkHierarchy:
    h: int
    alphas: list[float]
    rhos: list[float]
    levels: list[list[int]]        # levels[i-1] = sorted L_i
    forests: list[Forest]          # forests[i-1] roots at L_i and spans V
    variant: str = "standard"
    disjoint_levels: bool = False
    level_sets: list[frozenset] = field(init=False)

    def __post_init__(self):
        self.level_sets = [frozenset(lvl) for lvl in self.levels]

    def nearest(self, i: int, v: int) -> int:
        return self.forests[i - 1].nearest[v]

    def radius(self, i: int, v: int) -> float:
        return self.forests[i - 1].dist[v]


def build_hierarchy(g: WeightedGraph, h: int, variant: str = "standard", seed: int = 0,
                    disjoint_levels: bool = False, rhos: list[float] | None = None) -> LandmarkHierarchy:
    if variant not in ("standard", "tilde"):
        raise ParameterError(f"unknown variant {variant!r}")
    if variant == "tilde" and disjoint_levels:
        raise ParameterError("the tilde variant needs L_1 = V and cannot use disjoint levels")
    n = g.n
    exps = level_exponents(n, h)
    alphas = [a for a, _ in exps]
    if rhos is None:
        rhos = [r for _, r in exps]
    if len(rhos) != h:
        raise ParameterError("one rho per level required")
    if variant == "tilde":
        rhos = [float(n)] + list(rhos[1:])
    rng = random.Random(seed)
    draws = [[rng.random() for _ in range(n)] for _ in range(h)]
    levels: list[list[int]] = [[] for _ in range(h)]
    used = set()
    for i in range(h, 0, -1):
        p = rhos[i - 1] / n
        row = draws[i - 1]
        if variant == "tilde" and i == 1:
            members = list(range(n))
        else:
            members = [v for v in range(n) if row[v] < p and not (disjoint_levels and v in used)]
        if not members:
            members = [min(set(range(n)) - used)] if disjoint_levels else [0]
        levels[i - 1] = members
        if disjoint_levels:
            used.update(members)
    forests = [nearest_source_forest(g, lvl) for lvl in levels]
    return LandmarkHierarchy(h, alphas, list(rhos), levels, forests, variant, disjoint_levels)


@dataclass
class LevelPairs:
    level: int
    dppro: DPPRO
    balls: dict[int, dict[int, float]]   # u in L_i -> Ball_{i+1}(u) with distances

    @property
    def pair_count(self) -> int:
        return self.dppro.pair_count

    @property
    def branch_count(self) -> int:
        return self.dppro.event_count


def one_third_pairs(g: WeightedGraph, hierarchy: LandmarkHierarchy, i: int, retain_balls: bool = True) -> LevelPairs:
    """``P_i`` with canonical paths taken from the (i+1)-level ball trees."""
    lvl = hierarchy.level_sets[i - 1]
    up = hierarchy.forests[i]
    paths = {}
    balls = {}
    for u in hierarchy.levels[i - 1]:
        r = up.dist[u]
        if r == 0:
            if retain_balls:
                balls[u] = {}
            continue
        bt = ball_tree(g, u, r)
        third = r / 3
        for v in bt.order:
            if v != u and v in lvl and bt.dist[v] < third:
                key = (u, v) if u < v else (v, u)
                if key not in paths:
                    walk = tree_path(g, bt.pred, u, v)
                    paths[key] = walk if u < v else walk.reversed()
        if retain_balls:
            balls[u] = bt.dist
    return LevelPairs(i, DPPRO(g.n, paths), balls)


def top_level_dppro(g: WeightedGraph, members: list[int]) -> DPPRO:
    members = sorted(members)
    paths = {}
    for idx, x in enumerate(members[:-1]):
        rest = members[idx + 1:]
        tree = targets_search(g, x, rest)
        for y in rest:
            paths[(x, y)] = tree_path(g, tree.pred, x, y)
    return DPPRO(g.n, paths)


@dataclass
class MultiLevelSpace:
    forest_words: int
    level_words: list[int]
    top_words: int
    pair_counts: list[int]
    branch_counts: list[int]

    @property
    def total_words(self) -> int:
        return self.forest_words + sum(self.level_words) + self.top_words


def _dppro_words(d: DPPRO) -> int:
    # pair-set hash table: two words per pair on top of the DPPRO tables
    return d.space_report().total_words + 2 * d.pair_count


class MultiLevelOracle:
    def __init__(self, g: WeightedGraph | None, hierarchy: LandmarkHierarchy, level_pairs: list[LevelPairs],
                 top: DPPRO):
        self.hierarchy = hierarchy
        self.h = hierarchy.h
        self.variant = hierarchy.variant
        self.level_pairs = level_pairs
        self.top = top
        self.t = (4 / 3) ** self.h
        self.bound = multilevel_bound(self.h)
        self.n = len(hierarchy.forests[0].nearest)
        # the tilde variant answers from stored tables only
        self.g = None if self.variant == "tilde" else g
        self.space = MultiLevelSpace(
            forest_words=4 * self.n * self.h,
            level_words=[_dppro_words(lp.dppro) for lp in level_pairs],
            top_words=_dppro_words(top),
            pair_counts=[lp.pair_count for lp in level_pairs] + [top.pair_count],
            branch_counts=[lp.branch_count for lp in level_pairs] + [top.event_count],
        )

    def middle(self, j: int) -> DPPRO:
        return self.top if j == self.h else self.level_pairs[j - 1].dppro

    def query(self, u: int, v: int) -> OracleAnswer:
        if u == v:
            return OracleAnswer(PathWalk.single(u))
        hier = self.hierarchy
        sizes = []
        if self.variant == "standard":
            lset = hier.level_sets[0]
            radius = hier.forests[0].dist
            for a, b in ((u, v), (v, u)):
                res = truncated_ball_search(self.g, a, lset, target=b, radius=radius[a])
                sizes.append(len(res.explored))
                if res.outcome == "found-target":
                    walk = res.path_to_meeting(self.g)
                    if a != u:
                        walk = walk.reversed()
                    return OracleAnswer(walk, 0, ball_explored=sum(sizes), ball_sizes=tuple(sizes))
        f1 = hier.forests[0]
        a, b = f1.nearest[u], f1.nearest[v]
        probes = 2
        left = [f1.path_to_root(u)]
        right = [f1.path_to_root(v)]
        ladder = [(a, b)]
        j = 1
        stats = {"probes": 0}
        while True:
            if a == b:
                middle = PathWalk.single(a)
                break
            if j == self.h:
                middle = self.top.query(a, b, stats=stats)
                break
            d = self.level_pairs[j - 1].dppro
            probes += 1
            if (a, b) in d:
                middle = d.query(a, b, stats=stats)
                break
            f = hier.forests[j]
            left.append(f.path_to_root(a))
            right.append(f.path_to_root(b))
            a, b = f.nearest[a], f.nearest[b]
            probes += 2
            j += 1
            ladder.append((a, b))
        parts = left + [middle] + [p.reversed() for p in reversed(right)]
        walk = PathWalk.concat(parts)
        emit = stats["probes"] + sum(p.hop_count for p in left) + sum(p.hop_count for p in right)
        return OracleAnswer(walk, j, probes=probes, emit_probes=emit, ball_explored=sum(sizes),
                            ball_sizes=tuple(sizes), ladder=ladder)


def build_pair_structures(g: WeightedGraph, hierarchy: LandmarkHierarchy, include_top: bool = True,
                          retain_balls: bool = True) -> tuple[list[LevelPairs], DPPRO | None]:
    levels = [one_third_pairs(g, hierarchy, i, retain_balls) for i in range(1, hierarchy.h)]
    top = top_level_dppro(g, hierarchy.levels[-1]) if include_top else None
    return levels, top


def build_multilevel(g: WeightedGraph, h: int, variant: str = "standard", seed: int = 0,
                     disjoint_levels: bool = False, rhos: list[float] | None = None) -> MultiLevelOracle:
    if h < 1:
        raise ParameterError("h must be >= 1")
    if not g.is_connected():
        raise DisconnectedGraphError("multi-level oracle needs a connected graph")
    hier = build_hierarchy(g, h, variant, seed, disjoint_levels, rhos)
    levels, top = build_pair_structures(g, hier)
    return MultiLevelOracle(g, hier, levels, top)


def build_lambda_tilde(g: WeightedGraph, seed: int = 0, log_base: float = 2.0, space_constant: float = 8.0,
                       max_builds: int = 10) -> MultiLevelOracle:
    """Λ̃ with ``h = ceil(log_{4/3}(log n + 1))``, rebuilt while space exceeds ``C n h`` words.

    If no build fits within ``max_builds`` attempts the smallest one is kept.
    """
    h = tilde_levels(g.n, log_base)
    rng = random.Random(seed)
    best = None
    for attempt in range(1, max_builds + 1):
        o = build_multilevel(g, h, "tilde", seed=rng.getrandbits(32))
        o.build_attempts = attempt
        if o.space.total_words <= space_constant * g.n * h:
            return o
        if best is None or o.space.total_words < best.space.total_words:
            best = o
    return best


def query_multilevel(o: MultiLevelOracle, u: int, v: int) -> OracleAnswer:
    return o.query(u, v)


def audit_branch_confinement(o: MultiLevelOracle, i: int) -> int:
    """Count branching events of ``D_i`` that escape the (i+1)-level ball.

    For an event between pairs A and B, every orientation ``(u, v)`` of either
    pair with ``v`` in the one-third ball of ``u`` must have both endpoints of
    the other pair inside ``Ball_{i+1}(u)``.
    """
    if not 1 <= i < o.h:
        return 0
    lp = o.level_pairs[i - 1]
    d = lp.dppro
    radius = o.hierarchy.forests[i].dist
    violations = 0
    for pa, pb, _ in d.events:
        A, B = d.pairs[pa], d.pairs[pb]
        for P, Q in ((A, B), (B, A)):
            for u, v in (P, P[::-1]):
                ball = lp.balls[u]
                dv = ball.get(v)
                if dv is None or not dv < radius[u] / 3:
                    continue
                if Q[0] not in ball or Q[1] not in ball:
                    violations += 1
    return violations
