"""Distance-preserving path-reporting oracle (DPPRO) over a fixed pair set.

Stored tables:

* per pair: its two endpoints plus the first and last edge of its canonical path;
* per vertex lying inside at least one stored path: a *home path* id and that
  path's two edges at the vertex;
* per branching event ``(path a, path b, vertex)``: both paths' edges at the
  vertex. Two paths branch at a shared vertex when their ``{pred, succ}``
  neighbour sets differ there (an endpoint counts as a missing neighbour).

A query starts on the pair's first edge and at every internal vertex follows
the home path unless the (home path, query path, vertex) triple is a branching
event, in which case the event record supplies the query path's edges. The
direction of travel along a stored edge pair is resolved by excluding the
vertex we arrived from.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DisconnectedGraphError, NoPathError, NotInPairsError, ParameterError
from .graph import PathWalk, WeightedGraph
from .paths import CanonicalPathSystem, extract_path

# stored scalars per table entry, used by the space report
HOME_WORDS = 5      # path id, two (neighbour, weight) edges
EVENT_WORDS = 11    # key (2 path ids + vertex), four (neighbour, weight) edges
PAIR_WORDS = 6      # endpoints, first edge, last edge


def canonical_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def normalize_pairs(pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    out = set()
    for u, v in pairs:
        if u == v:
            raise ParameterError(f"degenerate pair ({u},{v})")
        out.add(canonical_pair(u, v))
    return sorted(out)


@dataclass
class SpaceReport:
    n_words: int
    branch_words: int
    pair_words: int
    event_count: int
    pair_count: int
    home_entries: int

    @property
    def total_words(self) -> int:
        return self.n_words + self.branch_words + self.pair_words


def _neighbours(walk: PathWalk, i: int):
    """``(pred, w_pred, succ, w_succ)`` of position ``i``; ``None`` past an end."""
    vs, ws = walk.vertices, walk.weights
    if i > 0:
        p, wp = vs[i - 1], ws[i - 1]
    else:
        p, wp = None, None
    if i < len(vs) - 1:
        s, wsucc = vs[i + 1], ws[i]
    else:
        s, wsucc = None, None
    return (p, wp, s, wsucc)


class DPPRO:
    def __init__(self, n: int, paths: Mapping[tuple[int, int], PathWalk], verify: bool = True):
        """Build from canonical paths keyed by ``(x, y)`` with ``x < y``.

        Each path must run from ``x`` to ``y``. With ``verify`` every pair is
        queried once after construction and compared with its stored path.
        """
        self.n = n
        self.pairs: list[tuple[int, int]] = sorted(paths)
        self.index: dict[tuple[int, int], int] = {p: i for i, p in enumerate(self.pairs)}
        self.first: list[tuple[int, float]] = []
        self.last: list[tuple[int, float]] = []
        self.home: dict[int, tuple[int, int, float, int, float]] = {}
        self.events: dict[tuple[int, int, int], tuple[tuple, tuple]] = {}

        walks = []
        for pid, (x, y) in enumerate(self.pairs):
            walk = paths[(x, y)]
            vs = walk.vertices
            if x >= y or vs[0] != x or vs[-1] != y or len(vs) < 2:
                raise ParameterError(f"path for pair ({x},{y}) has wrong endpoints or orientation")
            walks.append(walk)
            self.first.append((vs[1], walk.weights[0]))
            self.last.append((vs[-2], walk.weights[-1]))
            for i in range(1, len(vs) - 1):
                v = vs[i]
                if v not in self.home:
                    self.home[v] = (pid, vs[i - 1], walk.weights[i - 1], vs[i + 1], walk.weights[i])
        self._enumerate_events(walks)
        if verify:
            for pid, (x, y) in enumerate(self.pairs):
                got = self.query(x, y)
                if got.vertices != walks[pid].vertices:
                    raise DisconnectedGraphError(
                        f"stored paths are not mutually consistent: pair ({x},{y}) walked {got.vertices[:8]}...")

    def _enumerate_events(self, walks: list[PathWalk]) -> None:
        through: dict[int, dict[tuple[int, int], list[tuple[int, tuple]]]] = defaultdict(lambda: defaultdict(list))
        for pid, walk in enumerate(walks):
            for i, v in enumerate(walk.vertices):
                rec = _neighbours(walk, i)
                p, s = rec[0], rec[2]
                p = -1 if p is None else p
                s = -1 if s is None else s
                through[v][(p, s) if p < s else (s, p)].append((pid, rec))
        events = self.events
        for v, groups in through.items():
            if len(groups) < 2:
                continue
            glist = list(groups.values())
            for gi in range(len(glist)):
                for gj in range(gi + 1, len(glist)):
                    for pa, ra in glist[gi]:
                        for pb, rb in glist[gj]:
                            if pa < pb:
                                events[(pa, pb, v)] = (ra, rb)
                            else:
                                events[(pb, pa, v)] = (rb, ra)

    # ------------------------------------------------------------ queries

    def __contains__(self, pair) -> bool:
        return canonical_pair(*pair) in self.index

    def query(self, u: int, v: int, stats: dict | None = None) -> PathWalk:
        if u == v:
            raise NotInPairsError((u, v))
        forward = u < v
        pid = self.index.get((u, v) if forward else (v, u))
        probes = 1
        if pid is None:
            raise NotInPairsError((u, v))
        if forward:
            nxt, w = self.first[pid]
            end_prev, end_w = self.last[pid]
        else:
            nxt, w = self.last[pid]
            end_prev, end_w = self.first[pid]
        target = v
        vs = [u]
        ws = []
        prev, cur = u, nxt
        home, events = self.home, self.events
        limit = self.n
        while True:
            vs.append(cur)
            ws.append(w)
            if cur == target:
                break
            if cur == end_prev:
                vs.append(target)
                ws.append(end_w)
                break
            hp, a, wa, b, wb = home[cur]
            probes += 1
            if hp != pid:
                probes += 1
                key = (hp, pid, cur) if hp < pid else (pid, hp, cur)
                ev = events.get(key)
                if ev is not None:
                    a, wa, b, wb = ev[0] if key[0] == pid else ev[1]
            if a == prev:
                prev, cur, w = cur, b, wb
            else:
                prev, cur, w = cur, a, wa
            if len(ws) > limit:
                raise NoPathError(f"query ({u},{v}) did not terminate; inconsistent tables")
        if stats is not None:
            stats["probes"] = stats.get("probes", 0) + probes
        return PathWalk(vs, ws)

    # ------------------------------------------------------------ accounting

    @property
    def event_count(self) -> int:
        return len(self.events)

    @property
    def pair_count(self) -> int:
        return len(self.pairs)

    def events_per_path_pair(self) -> Counter:
        return Counter((a, b) for a, b, _ in self.events)

    def space_report(self) -> SpaceReport:
        return SpaceReport(
            n_words=HOME_WORDS * len(self.home),
            branch_words=EVENT_WORDS * len(self.events),
            pair_words=PAIR_WORDS * len(self.pairs),
            event_count=len(self.events),
            pair_count=len(self.pairs),
            home_entries=len(self.home),
        )


def build_dppro(g: WeightedGraph, pairs: Iterable[tuple[int, int]], system: CanonicalPathSystem | None = None,
                verify: bool = True) -> DPPRO:
    """DPPRO for ``pairs`` using canonical paths of ``g``.

    Trees missing from ``system`` are added on demand, preferring sources that
    already have a tree.
    """
    plist = normalize_pairs(pairs)
    if system is None:
        system = CanonicalPathSystem(g)
    paths = {}
    for x, y in plist:
        if y in system.trees and x not in system.trees:
            src, dst = y, x
        else:
            src, dst = x, y
        system.add_source(src)
        try:
            walk = extract_path(system, src, dst)
        except NoPathError:
            raise DisconnectedGraphError(f"pair ({x},{y}) is disconnected") from None
        paths[(x, y)] = walk if src == x else walk.reversed()
    return DPPRO(g.n, paths, verify=verify)


def dppro_space_report(o: DPPRO) -> SpaceReport:
    return o.space_report()
