from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bellman_ford, connected_graphs
from pathoracle.dppro import DPPRO, build_dppro, dppro_space_report, normalize_pairs
from pathoracle.errors import DisconnectedGraphError, NotInPairsError, ParameterError
from pathoracle.graph import WeightedGraph, generate_graph, validate_walk, walk_from_vertices


def brute_force_events(walks: dict) -> set:
    """Branching events straight from the definition: shared vertex, different neighbour sets."""
    def nbrs(vs, i):
        return frozenset([vs[i - 1] if i > 0 else None, vs[i + 1] if i + 1 < len(vs) else None])

    pairs = sorted(walks)
    out = set()
    for (ia, a), (ib, b) in itertools.combinations(enumerate(pairs), 2):
        va, vb = walks[a].vertices, walks[b].vertices
        for i, x in enumerate(va):
            if x in vb and nbrs(va, i) != nbrs(vb, vb.index(x)):
                out.add((ia, ib, x))
    return out


@pytest.fixture
def star():
    # a=0, b=1, c=2, d=3, e=4
    return WeightedGraph(5, [(0, 2, 1), (1, 2, 1), (2, 3, 1), (2, 4, 1)])


def test_star_example(star):
    o = build_dppro(star, [(0, 3), (1, 4)])
    assert o.event_count == 1
    assert list(o.events) == [(0, 1, 2)]
    assert o.query(1, 4).vertices == [1, 2, 4]
    assert o.query(1, 4).length == 2
    assert dppro_space_report(o).event_count == 1


def test_p4_single_pair(p4):
    o = build_dppro(p4, [(0, 3)])
    assert o.event_count == 0 and o.pair_count == 1
    assert o.home[1][0] == 0 and o.home[2][0] == 0
    walk = o.query(0, 3)
    assert walk.vertices == [0, 1, 2, 3] and walk.length == 3


def test_p5_overlapping_pairs():
    g = generate_graph("path", 5)
    o = build_dppro(g, [(0, 3), (1, 4)])
    paths = {(0, 3): walk_from_vertices(g, [0, 1, 2, 3]), (1, 4): walk_from_vertices(g, [1, 2, 3, 4])}
    expected = brute_force_events(paths)
    # frozen from the brute-force enumeration: the walks part ways at 1 and at 3
    assert expected == {(0, 1, 1), (0, 1, 3)}
    assert set(o.events) == expected
    assert o.query(4, 1).vertices == [4, 3, 2, 1]


def test_single_edge_pair(p4):
    o = build_dppro(p4, [(1, 2)])
    assert o.home == {} and o.query(2, 1).vertices == [2, 1]


def test_errors(p4):
    o = build_dppro(p4, [(0, 3)])
    with pytest.raises(NotInPairsError):
        o.query(0, 2)
    with pytest.raises(NotInPairsError):
        o.query(1, 1)
    with pytest.raises(ParameterError):
        normalize_pairs([(2, 2)])
    g = WeightedGraph(4, [(0, 1, 1), (2, 3, 1)])
    with pytest.raises(DisconnectedGraphError, match=r"\(0,3\)"):
        build_dppro(g, [(0, 3)])


def test_path_orientation_checked(p4):
    with pytest.raises(ParameterError):
        DPPRO(4, {(2, 0): walk_from_vertices(p4, [2, 1, 0])})
    with pytest.raises(ParameterError):
        DPPRO(4, {(0, 2): walk_from_vertices(p4, [0, 1])})


def test_gnm_exact(gnm128):
    rng = random.Random(3)
    pairs = set()
    while len(pairs) < 32:
        u, v = rng.sample(range(128), 2)
        pairs.add((u, v))
    o = build_dppro(gnm128, pairs)
    for u, v in pairs:
        walk = o.query(u, v)
        validate_walk(gnm128, walk, u, v)
        assert walk.length == bellman_ford(gnm128, u)[v]
        assert o.query(v, u).vertices == walk.reversed().vertices
    assert max(o.events_per_path_pair().values(), default=0) <= 2


def test_terminal_clique_event_cap():
    g = generate_graph("gnm", 64, 192, ("uniform_int", 1, 10), seed=5)
    terminals = random.Random(5).sample(range(64), 8)
    o = build_dppro(g, itertools.combinations(terminals, 2))
    assert o.pair_count == 28
    assert o.event_count <= 2 * 28 * 27 // 2


@given(connected_graphs(max_n=20, max_w=4), st.data())
def test_exactness_property(g, data):
    k = data.draw(st.integers(1, 12))
    pairs = set()
    for _ in range(k):
        u = data.draw(st.integers(0, g.n - 1))
        v = data.draw(st.integers(0, g.n - 1))
        if u != v:
            pairs.add((u, v))
    if not pairs:
        return
    o = build_dppro(g, pairs)
    paths = {}
    for (x, y) in o.pairs:
        paths[(x, y)] = o.query(x, y)
    assert set(o.events) == brute_force_events(paths)
    assert max(o.events_per_path_pair().values(), default=0) <= 2
    for u, v in pairs:
        stats = {}
        walk = o.query(u, v, stats=stats)
        validate_walk(g, walk, u, v)
        assert walk.length == bellman_ford(g, u)[v]
        assert stats["probes"] <= 4 * (walk.hop_count + 1)


def test_space_report(p4):
    rep = build_dppro(p4, [(0, 3), (1, 3)]).space_report()
    assert rep.pair_count == 2 and rep.home_entries == 2
    assert rep.total_words == rep.n_words + rep.branch_words + rep.pair_words
