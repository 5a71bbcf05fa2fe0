from __future__ import annotations

import random
import statistics

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import apsp, connected_graphs
from pathoracle.basic import metric_closure
from pathoracle.errors import ParameterError
from pathoracle.graph import generate_graph, validate_walk
from pathoracle.tz import TZOracle, build_tz, extract_union_spanner, query_tz, size_cap


def test_k1_is_exact_apsp(p4):
    o = build_tz(p4, 1)
    assert all(len(o.bunch[v]) == 4 for v in range(4))
    assert extract_union_spanner(o).pairs == frozenset({(0, 1), (1, 2), (2, 3)})
    assert query_tz(o, 0, 3).vertices == [0, 1, 2, 3]


def test_c5_k2_stretch(c5):
    d = apsp(c5)
    for seed in range(20):
        o = build_tz(c5, 2, seed=seed)
        H = o.union_spanner()
        for u in range(5):
            for v in range(5):
                walk = query_tz(o, u, v)
                validate_walk(c5, walk, u, v)
                assert walk.length <= 3 * d[u][v]
                assert all((a, b) in H for a, b in zip(walk.vertices, walk.vertices[1:]))


def test_same_vertex(c5):
    assert query_tz(build_tz(c5, 2), 3, 3).vertices == [3]


def test_bad_k(c5):
    with pytest.raises(ParameterError):
        build_tz(c5, 0)


@given(connected_graphs(max_n=20), st.integers(1, 4), st.integers(0, 1000))
def test_stretch_property(g, k, seed):
    d = apsp(g)
    o = build_tz(g, k, seed=seed)
    H = o.union_spanner()
    for u in range(g.n):
        for v in range(g.n):
            walk = o.query(u, v)
            validate_walk(g, walk, u, v)
            assert walk.length <= (2 * k - 1) * d[u][v]
            assert o.distance_estimate(u, v) == walk.length
            assert all((a, b) in H for a, b in zip(walk.vertices, walk.vertices[1:]))


@given(connected_graphs(max_n=30), st.integers(2, 4), st.integers(0, 1000))
def test_witness_monotone(g, k, seed):
    o = build_tz(g, k, seed=seed)
    for v in range(g.n):
        ds = [o.level_dist[i][v] for i in range(k)]
        assert ds == sorted(ds)
        for i in range(k):
            # witnesses stay inside the bunch
            assert o.witness[i][v] in o.bunch[v]


def test_closure_spanner_size_and_containment():
    sizes = []
    for seed in range(20):
        g = generate_graph("gnm", 512, 2048, ("uniform_int", 1, 100), seed=seed)
        rng = random.Random(seed)
        closure, _ = metric_closure(g, sorted(rng.sample(range(512), 64)), rng)
        o = build_tz(closure, 2, seed=seed)
        H = o.union_spanner()
        sizes.append(H.size)
        for _ in range(50):
            u, v = rng.randrange(64), rng.randrange(64)
            walk = o.query(u, v)
            assert all((a, b) in H for a, b in zip(walk.vertices, walk.vertices[1:]))
    assert statistics.median(sizes) <= size_cap(64, 2)


def test_size_cap_retry_keeps_smallest(c5):
    # an impossible cap forces every retry; the result is still a valid oracle
    o = build_tz(c5, 2, seed=1, size_cap_retries=3, cap_constant=1e-9)
    assert isinstance(o, TZOracle) and o.attempts == 4
    d = apsp(c5)
    assert all(o.query(u, v).length <= 3 * d[u][v] for u in range(5) for v in range(5))
