"""Weighted undirected graphs, walks, generators and the TSV graph format."""

from __future__ import annotations

import heapq
import logging
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GraphFormatError, NoPathError, ParameterError

log = logging.getLogger(__name__)

# Tie-break keys live in [2**62, 2**63): any two-edge key sum exceeds any single
# key, so among equal-length paths the canonical one also has the fewest hops.
KEY_LO = 1 << 62


def draw_keys(rng: random.Random, count: int) -> list[int]:
    return [KEY_LO | rng.getrandbits(62) for _ in range(count)]


class WeightedGraph:
    """Undirected graph with positive weights and weight-sorted adjacency.

    ``adj[v]`` is a list of ``(neighbor, weight, edge_id)`` sorted by weight.
    ``keys[e]`` is the 64-bit tie-break key of edge ``e``.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int, float]], keys: Sequence[int] | None = None,
                 key_seed: int = 0):
        if n < 1:
            raise ParameterError("graph needs at least one vertex")
        self.n = n
        self.edges: list[tuple[int, int, float]] = []
        self.adj: list[list[tuple[int, float, int]]] = [[] for _ in range(n)]
        self._index: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at {u}")
            if not w > 0 or math.isinf(w):
                raise ParameterError(f"edge ({u},{v}) has non-positive or infinite weight {w}")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in self._index:
                raise ParameterError(f"parallel edge ({a},{b}); deduplicate before construction")
            self._index[(a, b)] = len(self.edges)
            self.edges.append((a, b, w))
        if keys is None:
            keys = draw_keys(random.Random(key_seed), len(self.edges))
        elif len(keys) != len(self.edges):
            raise ParameterError("one tie-break key per edge required")
        self.keys = list(keys)
        for eid, (a, b, w) in enumerate(self.edges):
            self.adj[a].append((b, w, eid))
            self.adj[b].append((a, w, eid))
        for lst in self.adj:
            lst.sort(key=lambda t: (t[1], t[0]))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int | None:
        return self._index.get((u, v) if u < v else (v, u))

    def weight(self, u: int, v: int) -> float:
        eid = self.edge_id(u, v)
        if eid is None:
            raise KeyError((u, v))
        return self.edges[eid][2]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_connected(self) -> bool:
        seen = bytearray(self.n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            x = stack.pop()
            for y, _, _ in self.adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    stack.append(y)
        return count == self.n

    def subgraph(self, edge_ids: Iterable[int]) -> "WeightedGraph":
        """Spanning subgraph on the given edges; tie-break keys are inherited."""
        ids = sorted(set(edge_ids))
        return WeightedGraph(self.n, [self.edges[e] for e in ids], keys=[self.keys[e] for e in ids])

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


@dataclass
class PathWalk:
    """A walk given by its vertices and the weights of the traversed edges.

    ``length`` is always the left-to-right sum of ``weights``.
    """

    vertices: list[int]
    weights: list[float] = field(default_factory=list)

    def __post_init__(self):
        if len(self.weights) != max(len(self.vertices) - 1, 0):
            raise ValueError("a walk over k+1 vertices needs k edge weights")
        total = 0.0
        for w in self.weights:
            total += w
        self.length = total

    @property
    def hop_count(self) -> int:
        return len(self.weights)

    @classmethod
    def single(cls, v: int) -> "PathWalk":
        return cls([v], [])

    def reversed(self) -> "PathWalk":
        return PathWalk(self.vertices[::-1], self.weights[::-1])

    def then(self, other: "PathWalk") -> "PathWalk":
        """Concatenate; ``other`` must start where this walk ends."""
        if self.vertices[-1] != other.vertices[0]:
            raise ValueError(f"cannot splice walk ending at {self.vertices[-1]} onto one starting at {other.vertices[0]}")
        return PathWalk(self.vertices + other.vertices[1:], self.weights + other.weights)

    @staticmethod
    def concat(parts: Sequence["PathWalk"]) -> "PathWalk":
        vertices = list(parts[0].vertices)
        weights = list(parts[0].weights)
        for p in parts[1:]:
            if vertices[-1] != p.vertices[0]:
                raise ValueError(f"cannot splice walk ending at {vertices[-1]} onto one starting at {p.vertices[0]}")
            vertices.extend(p.vertices[1:])
            weights.extend(p.weights)
        return PathWalk(vertices, weights)


def walk_from_vertices(g: WeightedGraph, vertices: Sequence[int]) -> PathWalk:
    """Build a walk, reading edge weights from ``g``."""
    weights = []
    for a, b in zip(vertices, vertices[1:]):
        try:
            weights.append(g.weight(a, b))
        except KeyError:
            raise NoPathError(f"({a},{b}) is not an edge") from None
    return PathWalk(list(vertices), weights)


def validate_walk(g: WeightedGraph, walk: PathWalk, start: int | None = None, end: int | None = None) -> None:
    """Raise ``AssertionError`` unless ``walk`` is a walk in ``g`` with consistent length."""
    vs = walk.vertices
    if not vs:
        raise AssertionError("empty walk")
    if start is not None and vs[0] != start:
        raise AssertionError(f"walk starts at {vs[0]}, expected {start}")
    if end is not None and vs[-1] != end:
        raise AssertionError(f"walk ends at {vs[-1]}, expected {end}")
    total = 0.0
    for i, (a, b) in enumerate(zip(vs, vs[1:])):
        eid = g.edge_id(a, b)
        if eid is None:
            raise AssertionError(f"hop {i}: ({a},{b}) is not an edge")
        w = g.edges[eid][2]
        if w != walk.weights[i]:
            raise AssertionError(f"hop {i}: weight {walk.weights[i]} != edge weight {w}")
        total += w
    if total != walk.length:
        raise AssertionError(f"walk length {walk.length} != edge sum {total}")


def density_lambda(g: WeightedGraph) -> float:
    return g.m / g.n


# ---------------------------------------------------------------- generators

def _random_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labelled tree on ``n`` vertices via a Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    out = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        out.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    out.append((a, b))
    return out


def _draw_weight(rng: random.Random, weight_mode) -> float:
    if weight_mode == "unit":
        return 1.0
    kind, lo, hi = weight_mode
    if kind != "uniform_int" or lo < 1 or hi < lo:
        raise ParameterError(f"bad weight mode {weight_mode!r}")
    return float(rng.randint(lo, hi))


def parse_weight_mode(text: str):
    """``unit`` or ``uniform_int(lo,hi)`` / ``uniform_int:lo:hi``."""
    text = text.strip()
    if text == "unit":
        return "unit"
    if text.startswith("uniform_int"):
        body = text[len("uniform_int"):].strip("():")
        parts = [p for p in body.replace(":", ",").split(",") if p]
        if len(parts) == 2:
            return ("uniform_int", int(parts[0]), int(parts[1]))
    raise ParameterError(f"unknown weight mode {text!r}")


def generate_graph(model: str, n: int, m: int = 0, weight_mode="unit", seed: int = 0) -> WeightedGraph:
    """Seeded connected graph.

    ``gnm`` plants a uniform random spanning tree and then adds uniformly random
    new edges until there are exactly ``m``. ``path``, ``cycle`` and ``grid``
    ignore ``m``; ``grid`` lays vertices row-major on a ``ceil(sqrt(n))``-wide grid.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    rng = random.Random(seed)
    if model == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif model == "cycle":
        if n < 3:
            raise ParameterError("cycle needs n >= 3")
        pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif model == "grid":
        width = math.isqrt(n - 1) + 1 if n > 1 else 1
        pairs = []
        for v in range(n):
            if (v + 1) % width and v + 1 < n:
                pairs.append((v, v + 1))
            if v + width < n:
                pairs.append((v, v + width))
    elif model == "gnm":
        if m > n * (n - 1) // 2:
            raise ParameterError(f"m={m} exceeds n(n-1)/2 for n={n}")
        if m < n - 1:
            raise ParameterError(f"m={m} too small for a connected graph on n={n}")
        present = set()
        pairs = []
        for a, b in _random_tree(n, rng):
            e = (a, b) if a < b else (b, a)
            present.add(e)
            pairs.append(e)
        if m > n * (n - 1) // 4:
            # dense: sample from the complement directly
            rest = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in present]
            pairs.extend(rng.sample(rest, m - len(pairs)))
        else:
            while len(pairs) < m:
                a, b = rng.randrange(n), rng.randrange(n)
                if a == b:
                    continue
                e = (a, b) if a < b else (b, a)
                if e in present:
                    continue
                present.add(e)
                pairs.append(e)
    else:
        raise ParameterError(f"unknown model {model!r}")
    edges = [(a, b, _draw_weight(rng, weight_mode)) for a, b in pairs]
    keys = draw_keys(rng, len(edges))
    return WeightedGraph(n, edges, keys=keys)


# ---------------------------------------------------------------- file formats

def _data_lines(path: Path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line.split()


def _fmt_weight(w: float) -> str:
    return str(int(w)) if w.is_integer() else repr(w)


def read_edge_list(path) -> tuple[int, list[tuple[int, int, float]], int]:
    """Parse graph TSV. Returns ``(n, deduplicated edges, dropped self-loops)``."""
    lines = _data_lines(Path(path))
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphFormatError(f"{path}: empty file") from None
    if len(header) != 2:
        raise GraphFormatError(f"{path}:{lineno}: header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    best: dict[tuple[int, int], float] = {}
    loops = 0
    count = 0
    for lineno, parts in lines:
        if len(parts) != 3:
            raise GraphFormatError(f"{path}:{lineno}: expected 'u v w'")
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphFormatError(f"{path}:{lineno}: cannot parse {parts}") from None
        count += 1
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"{path}:{lineno}: vertex out of range")
        if not w > 0:
            raise GraphFormatError(f"{path}:{lineno}: weight must be positive")
        if u == v:
            loops += 1
            continue
        e = (u, v) if u < v else (v, u)
        if e not in best or w < best[e]:
            best[e] = w
    if count != m:
        raise GraphFormatError(f"{path}: header says {m} edges, found {count}")
    if loops:
        log.warning("%s: dropped %d self-loop(s)", path, loops)
    return n, [(a, b, w) for (a, b), w in best.items()], loops


def read_graph(path, key_seed: int = 0) -> WeightedGraph:
    n, edges, _ = read_edge_list(path)
    return WeightedGraph(n, edges, key_seed=key_seed)


def write_graph(g: WeightedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v, w in g.edges:
            fh.write(f"{u} {v} {_fmt_weight(w)}\n")


def read_pairs(path) -> list[tuple[int, int]]:
    out = []
    for lineno, parts in _data_lines(Path(path)):
        if len(parts) != 2:
            raise GraphFormatError(f"{path}:{lineno}: expected 'u v'")
        out.append((int(parts[0]), int(parts[1])))
    return out


def write_pairs(pairs: Iterable[tuple[int, int]], path) -> None:
    with open(path, "w") as fh:
        for u, v in pairs:
            fh.write(f"{u} {v}\n")
