"""Greedy multiplicative spanners and oracles composed on top of them.

Running a stretch-``t`` oracle on an ``s``-spanner of ``G`` gives stretch
``s * t`` in ``G``; reported walks use spanner edges only, which are edges of
``G`` as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush

from .answer import OracleAnswer, multilevel_bound
from .errors import GraphFormatError, ParameterError
from .graph import WeightedGraph, read_edge_list, validate_walk
from .multilevel import MultiLevelOracle, build_multilevel
from .paths import INF


@dataclass
class SpannerGraph:
    host: WeightedGraph
    edge_ids: list[int]          # kept host edge ids, sorted
    stretch: float               # s; 2r - 1 for the greedy construction
    graph: WeightedGraph         # the spanner itself, keys inherited from the host
    r: int | None = None

    @property
    def size(self) -> int:
        return len(self.edge_ids)


def _within(adj, u: int, v: int, cutoff: float) -> bool:
    """Is ``d(u, v) <= cutoff`` in the partial spanner? Bidirectional, bounded."""
    if not adj[u] or not adj[v]:
        return False
    dists = ({u: 0.0}, {v: 0.0})
    heaps = ([(0.0, u)], [(0.0, v)])
    done = (set(), set())
    while heaps[0] and heaps[1]:
        if heaps[0][0][0] + heaps[1][0][0] > cutoff:
            return False
        side = 0 if len(heaps[0]) <= len(heaps[1]) else 1
        d, x = heappop(heaps[side])
        if x in done[side]:
            continue
        done[side].add(x)
        mine, other = dists[side], dists[1 - side]
        for y, w in adj[x]:
            nd = d + w
            if nd > cutoff:
                continue
            if y in other and nd + other[y] <= cutoff:
                return True
            if nd < mine.get(y, INF):
                mine[y] = nd
                heappush(heaps[side], (nd, y))
    return False


def greedy_spanner(g: WeightedGraph, r: int) -> SpannerGraph:
    """Keep an edge iff the spanner built so far has ``d(u, v) > (2r-1) w``.

    Edges are scanned by nondecreasing weight, ties by endpoint ids.
    """
    if r < 1:
        raise ParameterError("r must be >= 1")
    s = 2 * r - 1
    adj: list[list[tuple[int, float]]] = [[] for _ in range(g.n)]
    kept = []
    for eid in sorted(range(g.m), key=lambda e: (g.edges[e][2], g.edges[e][0], g.edges[e][1])):
        a, b, w = g.edges[eid]
        if _within(adj, a, b, s * w):
            continue
        kept.append(eid)
        adj[a].append((b, w))
        adj[b].append((a, w))
    kept.sort()
    return SpannerGraph(g, kept, float(s), g.subgraph(kept), r)


def load_spanner(host: WeightedGraph, path, stretch: float) -> SpannerGraph:
    """Externally built spanner from a graph file whose edges are host edges.

    ``stretch`` is the guarantee the caller vouches for; it is recorded, not checked.
    """
    n, edges, _ = read_edge_list(path)
    if n != host.n:
        raise GraphFormatError(f"{path}: spanner has {n} vertices, host has {host.n}")
    ids = []
    for u, v, w in edges:
        eid = host.edge_id(u, v)
        if eid is None:
            raise GraphFormatError(f"{path}: edge ({u},{v}) is not a host edge")
        if host.edges[eid][2] != w:
            raise GraphFormatError(f"{path}: edge ({u},{v}) weight {w} differs from host weight {host.edges[eid][2]}")
        ids.append(eid)
    ids.sort()
    return SpannerGraph(host, ids, float(stretch), host.subgraph(ids))


class ComposedOracle:
    def __init__(self, spanner: SpannerGraph, inner: MultiLevelOracle):
        self.spanner = spanner
        self.inner = inner
        self.h = inner.h
        self.bound = spanner.stretch * inner.bound

    def level_bound(self, p: int) -> float:
        return self.spanner.stretch * multilevel_bound(p)

    def query(self, u: int, v: int) -> OracleAnswer:
        ans = self.inner.query(u, v)
        validate_walk(self.spanner.host, ans.walk, u, v)
        return ans


def build_composed(g: WeightedGraph, r: int, h: int, seed: int = 0, spanner: SpannerGraph | None = None,
                   variant: str = "standard") -> ComposedOracle:
    if spanner is None:
        spanner = greedy_spanner(g, r)
    elif spanner.host is not g:
        raise ParameterError("spanner was built for a different host graph")
    return ComposedOracle(spanner, build_multilevel(spanner.graph, h, variant, seed=seed))


def query_composed(o: ComposedOracle, u: int, v: int) -> OracleAnswer:
    return o.query(u, v)
