"""Dijkstra variants with canonical tie-breaking.

Every search orders labels by ``(distance, key_sum)`` where ``key_sum`` adds up
the per-edge tie-break keys along the path. The order is translation
invariant, so Dijkstra stays correct and prefix-optimality holds; with random
keys the minimiser is unique with overwhelming probability. Any search, full or
truncated and from any endpoint, therefore reports the same path between two
vertices, and every subpath of a canonical path is canonical.

Unique minimisers rely on distances being compared exactly; integer weights
(all built-in generators) guarantee that. With arbitrary decimal weights two
equal-length paths may sum to floats that differ in the last bit, in which case
the float order decides instead of the keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Callable, Container, Iterable

from .errors import DisconnectedGraphError, NoPathError
from .graph import PathWalk, WeightedGraph

INF = float("inf")


@dataclass
class SourceTree:
    """Shortest-path tree of one source; ``pred[v]`` is an edge id or -1."""

    source: int
    dist: list[float]
    pred: list[int]
    key_sum: list[int]

    def reachable(self, v: int) -> bool:
        return self.dist[v] < INF


def dijkstra_canonical(g: WeightedGraph, source: int) -> SourceTree:
    n = g.n
    if not 0 <= source < n:
        raise IndexError(f"source {source} out of range")
    dist = [INF] * n
    ks = [0] * n
    pred = [-1] * n
    done = bytearray(n)
    adj, keys = g.adj, g.keys
    dist[source] = 0.0
    heap = [(0.0, 0, source)]
    while heap:
        d, k, x = heappop(heap)
        if done[x]:
            continue
        done[x] = 1
        for y, w, e in adj[x]:
            if done[y]:
                continue
            nd = d + w
            dy = dist[y]
            if nd < dy or (nd == dy and k + keys[e] < ks[y]):
                nk = k + keys[e]
                dist[y] = nd
                ks[y] = nk
                pred[y] = e
                heappush(heap, (nd, nk, y))
    return SourceTree(source, dist, pred, ks)


def tree_path(g: WeightedGraph, pred, source: int, target: int) -> PathWalk:
    """Walk from ``source`` to ``target`` along predecessor edges.

    ``pred`` maps vertex -> edge id (list or dict); -1 or missing marks the root.
    """
    edges = g.edges
    vs = [target]
    ws = []
    x = target
    is_map = isinstance(pred, dict)
    while x != source:
        e = pred.get(x, -1) if is_map else pred[x]
        if e < 0:
            raise NoPathError(f"no path from {source} to {target}")
        a, b, w = edges[e]
        x = a if b == x else b
        vs.append(x)
        ws.append(w)
        if len(ws) > g.n:
            raise NoPathError(f"predecessor cycle while tracing {source}->{target}")
    vs.reverse()
    ws.reverse()
    return PathWalk(vs, ws)


class CanonicalPathSystem:
    """Lazily built canonical shortest-path trees for a set of sources."""

    def __init__(self, g: WeightedGraph, sources: Iterable[int] = ()):
        self.g = g
        self.trees: dict[int, SourceTree] = {}
        for s in sources:
            self.add_source(s)

    @property
    def sources(self) -> set[int]:
        return set(self.trees)

    def add_source(self, s: int) -> SourceTree:
        tree = self.trees.get(s)
        if tree is None:
            tree = self.trees[s] = dijkstra_canonical(self.g, s)
        return tree

    def dist(self, s: int, t: int) -> float:
        return self.trees[s].dist[t]


def extract_path(system: CanonicalPathSystem, source: int, target: int) -> PathWalk:
    if source not in system.trees:
        raise KeyError(f"no tree for source {source}")
    tree = system.trees[source]
    if not tree.reachable(target):
        raise NoPathError(f"{target} unreachable from {source}")
    return tree_path(system.g, tree.pred, source, target)


# ---------------------------------------------------------------- truncated search

@dataclass
class BallResult:
    outcome: str  # "found-target" | "found-stopper"
    meeting_vertex: int
    explored: list[tuple[int, float]]
    edges_scanned: int
    pred: dict[int, int] = field(repr=False, default_factory=dict)

    def path_to_meeting(self, g: WeightedGraph) -> PathWalk:
        return tree_path(g, self.pred, self.explored[0][0], self.meeting_vertex)


def truncated_ball_search(g: WeightedGraph, source: int, stop_set: Container[int] | Callable[[int], bool],
                          target: int | None = None, radius: float | None = None) -> BallResult:
    """Dijkstra from ``source`` until a stop-set vertex or ``target`` is settled.

    ``radius``, when given, is the distance to the nearest stop-set vertex. It
    enables the weight-sorted relaxation cutoff (edges whose tentative distance
    exceeds it are skipped together with the rest of the adjacency list) and
    makes ball membership strict: a target settled at distance ``>= radius`` is
    not reported, the search runs on to the stopper.
    """
    is_stop = stop_set if callable(stop_set) else stop_set.__contains__
    adj, keys = g.adj, g.keys
    dist = {source: 0.0}
    ks = {source: 0}
    pred: dict[int, int] = {}
    done = set()
    explored = []
    scanned = 0
    heap = [(0.0, 0, source)]
    while heap:
        d, k, x = heappop(heap)
        if x in done:
            continue
        done.add(x)
        explored.append((x, d))
        if x == target and (radius is None or d < radius):
            return BallResult("found-target", x, explored, scanned, pred)
        if is_stop(x):
            return BallResult("found-stopper", x, explored, scanned, pred)
        for y, w, e in adj[x]:
            nd = d + w
            if radius is not None and nd > radius:
                break
            scanned += 1
            if y in done:
                continue
            dy = dist.get(y, INF)
            nk = k + keys[e]
            if nd < dy or (nd == dy and nk < ks[y]):
                dist[y] = nd
                ks[y] = nk
                pred[y] = e
                heappush(heap, (nd, nk, y))
    raise DisconnectedGraphError(f"search from {source} exhausted its component without reaching a stopper")


@dataclass
class BallTree:
    """Canonical tree of every vertex strictly closer to ``source`` than ``radius``."""

    source: int
    radius: float
    dist: dict[int, float]
    pred: dict[int, int]
    order: list[int]

    def __contains__(self, v: int) -> bool:
        return v in self.dist

    def path(self, g: WeightedGraph, target: int) -> PathWalk:
        if target not in self.dist:
            raise NoPathError(f"{target} outside ball of {self.source}")
        return tree_path(g, self.pred, self.source, target)


def ball_tree(g: WeightedGraph, source: int, radius: float) -> BallTree:
    adj, keys = g.adj, g.keys
    tent = {source: 0.0}
    ks = {source: 0}
    pred: dict[int, int] = {}
    settled: dict[int, float] = {}
    order = []
    heap = [(0.0, 0, source)]
    while heap:
        d, k, x = heappop(heap)
        if x in settled:
            continue
        if d >= radius:
            break
        settled[x] = d
        order.append(x)
        for y, w, e in adj[x]:
            nd = d + w
            if nd >= radius:
                break
            if y in settled:
                continue
            nk = k + keys[e]
            dy = tent.get(y, INF)
            if nd < dy or (nd == dy and nk < ks[y]):
                tent[y] = nd
                ks[y] = nk
                pred[y] = e
                heappush(heap, (nd, nk, y))
    return BallTree(source, radius, settled, {v: pred[v] for v in order if v != source}, order)


def targets_search(g: WeightedGraph, source: int, targets: Iterable[int]) -> SourceTree:
    """Canonical Dijkstra that stops once every target is settled.

    Unsettled entries keep their tentative values; only settled ones are exact.
    """
    n = g.n
    remaining = set(targets)
    remaining.discard(source)
    dist = [INF] * n
    ks = [0] * n
    pred = [-1] * n
    done = bytearray(n)
    adj, keys = g.adj, g.keys
    dist[source] = 0.0
    heap = [(0.0, 0, source)]
    while heap and remaining:
        d, k, x = heappop(heap)
        if done[x]:
            continue
        done[x] = 1
        remaining.discard(x)
        for y, w, e in adj[x]:
            if done[y]:
                continue
            nd = d + w
            dy = dist[y]
            if nd < dy or (nd == dy and k + keys[e] < ks[y]):
                nk = k + keys[e]
                dist[y] = nd
                ks[y] = nk
                pred[y] = e
                heappush(heap, (nd, nk, y))
    if remaining:
        raise NoPathError(f"targets {sorted(remaining)[:5]} unreachable from {source}")
    return SourceTree(source, dist, pred, ks)


# ---------------------------------------------------------------- nearest-source forest

@dataclass
class Forest:
    """Vertex-disjoint shortest-path trees rooted at a source set.

    ``nearest[v]`` is the closest source (smallest id on distance ties),
    ``dist[v]`` its distance, ``parent[v]``/``parent_w[v]`` the next hop towards
    it (-1 at roots).
    """

    nearest: list[int]
    dist: list[float]
    parent: list[int]
    parent_w: list[float]

    def path_to_root(self, v: int) -> PathWalk:
        vs = [v]
        ws = []
        parent, parent_w = self.parent, self.parent_w
        while parent[v] >= 0:
            ws.append(parent_w[v])
            v = parent[v]
            vs.append(v)
        return PathWalk(vs, ws)


def nearest_source_forest(g: WeightedGraph, sources: Iterable[int]) -> Forest:
    """Multi-source Dijkstra with labels ordered by ``(distance, source id, key_sum)``."""
    n = g.n
    adj, keys = g.adj, g.keys
    dist = [INF] * n
    near = [-1] * n
    ks = [0] * n
    parent = [-1] * n
    parent_w = [0.0] * n
    done = bytearray(n)
    heap = []
    for s in sorted(set(sources)):
        dist[s] = 0.0
        near[s] = s
        heap.append((0.0, s, 0, s))
    if not heap:
        raise ValueError("empty source set")
    heap.sort()
    while heap:
        d, src, k, x = heappop(heap)
        if done[x]:
            continue
        done[x] = 1
        for y, w, e in adj[x]:
            if done[y]:
                continue
            nd = d + w
            nk = k + keys[e]
            dy = dist[y]
            if nd < dy or (nd == dy and (src < near[y] or (src == near[y] and nk < ks[y]))):
                dist[y] = nd
                near[y] = src
                ks[y] = nk
                parent[y] = x
                parent_w[y] = w
                heappush(heap, (nd, src, nk, y))
    if not all(done):
        raise DisconnectedGraphError("graph is disconnected")
    return Forest(near, dist, parent, parent_w)
