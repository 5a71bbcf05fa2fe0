"""Independent exact distances (scipy) and the exact-answer baseline oracle."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .answer import OracleAnswer
from .graph import PathWalk, WeightedGraph
from .paths import targets_search, tree_path


def to_csr(g: WeightedGraph) -> csr_matrix:
    if not g.edges:
        return csr_matrix((g.n, g.n))
    a, b, w = zip(*g.edges)
    return csr_matrix((np.asarray(w, dtype=float), (np.asarray(a), np.asarray(b))), shape=(g.n, g.n))


def exact_distances(g: WeightedGraph, sources, chunk: int = 64) -> dict[int, np.ndarray]:
    """``{s: distance row}`` for each distinct source, computed in chunks."""
    mat = to_csr(g)
    srcs = sorted(set(sources))
    rows = {}
    for i in range(0, len(srcs), chunk):
        block = srcs[i:i + chunk]
        d = dijkstra(mat, directed=False, indices=block)
        for s, row in zip(block, np.atleast_2d(d)):
            rows[s] = row
    return rows


def exact_distance(g: WeightedGraph, u: int, v: int) -> float:
    return float(exact_distances(g, [u])[u][v])


class ExactBaseline:
    """Canonical shortest paths from a fresh search per query; stretch 1."""

    bound = 1

    def __init__(self, g: WeightedGraph):
        self.g = g

    def query(self, u: int, v: int) -> OracleAnswer:
        if u == v:
            return OracleAnswer(PathWalk.single(u))
        tree = targets_search(self.g, u, [v])
        return OracleAnswer(tree_path(self.g, tree.pred, u, v), 0)
