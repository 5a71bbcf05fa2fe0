from __future__ import annotations

import gc
import math
import random
import statistics

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import apsp, connected_graphs
from pathoracle.answer import multilevel_bound
from pathoracle.errors import DisconnectedGraphError, ParameterError
from pathoracle.graph import PathWalk, WeightedGraph, generate_graph, validate_walk
from pathoracle.multilevel import (audit_branch_confinement, build_hierarchy, build_lambda_tilde, build_multilevel,
                                   build_pair_structures, level_exponents, query_multilevel, tilde_levels)


def test_level_exponents_formula():
    assert level_exponents(10**6, 1)[0][0] == 0.25
    alphas = [a for a, _ in level_exponents(10**6, 3)]
    assert alphas == pytest.approx([37 / 64, 7 / 16, 1 / 4])
    for h in range(1, 8):
        exps = level_exponents(2**40, h)
        rhos = [r for _, r in exps]
        assert exps[-1][0] == 0.25
        assert rhos == sorted(rhos, reverse=True) and len(set(rhos)) == h


def test_level_exponents_clamp():
    n = 4096
    for _, rho in level_exponents(n, 4):
        assert 3 * math.log(n) <= rho <= n
    with pytest.raises(ParameterError):
        level_exponents(1, 2)


def test_tilde_depth_at_2_16():
    n = 2**16
    h = tilde_levels(n)
    assert h == math.ceil(math.log(17) / math.log(4 / 3)) == 10
    # unclamped: n**(1 - 0.75**10) is about 35 thousand, well below n
    assert level_exponents(n, h)[0][1] == pytest.approx(n ** (1 - 0.75 ** 10))
    g = generate_graph("gnm", 300, 600, seed=0)
    hier = build_hierarchy(g, 3, "tilde")
    assert hier.rhos[0] == g.n and hier.levels[0] == list(range(g.n))


def test_tilde_balls_empty():
    g = generate_graph("gnm", 200, 600, ("uniform_int", 1, 9), seed=1)
    o = build_multilevel(g, 2, "tilde", seed=1)
    assert all(r == 0 for r in o.hierarchy.forests[0].dist)
    assert o.g is None


def test_levels_nonempty_and_concentrated():
    g = generate_graph("gnm", 4096, 16384, ("uniform_int", 1, 100), seed=1)
    sizes = []
    for seed in range(50):
        hier = build_hierarchy(g, 2, seed=seed)
        assert all(hier.levels)
        sizes.append(len(hier.levels[1]))
    rho2 = level_exponents(g.n, 2)[1][1]
    assert rho2 / 2 <= statistics.median(sizes) <= 2 * rho2


def test_disjoint_levels():
    g = generate_graph("gnm", 500, 1500, seed=2)
    hier = build_hierarchy(g, 3, seed=2, disjoint_levels=True)
    sets = [set(lvl) for lvl in hier.levels]
    assert not (sets[0] & sets[1]) and not (sets[1] & sets[2]) and not (sets[0] & sets[2])
    with pytest.raises(ParameterError):
        build_hierarchy(g, 2, "tilde", disjoint_levels=True)


def test_h1_has_only_top_level():
    g = generate_graph("gnm", 300, 900, seed=3)
    o = build_multilevel(g, 1, seed=3)
    L = o.hierarchy.levels[0]
    assert o.level_pairs == []
    assert o.top.pair_count == len(L) * (len(L) - 1) // 2
    assert audit_branch_confinement(o, 1) == 0


@given(connected_graphs(min_n=4, max_n=40, max_w=6), st.integers(1, 3), st.integers(0, 1000),
       st.sampled_from(["standard", "tilde"]))
def test_pair_rule_exact(g, h, seed, variant):
    hier = build_hierarchy(g, h, variant, seed=seed)
    levels, top = build_pair_structures(g, hier)
    d = apsp(g)
    for i, lp in enumerate(levels, 1):
        r = hier.forests[i].dist
        L = hier.levels[i - 1]
        expected = {(u, v) for u in L for v in L if u < v and (d[u][v] < r[u] / 3 or d[u][v] < r[v] / 3)}
        assert set(lp.dppro.pairs) == expected
        for u, v in expected:
            assert (v, u) in lp.dppro
            assert lp.dppro.query(u, v).length == d[u][v]
    L = hier.levels[-1]
    assert top.pair_count == len(L) * (len(L) - 1) // 2


@given(connected_graphs(min_n=3, max_n=40), st.integers(1, 4), st.integers(0, 1000),
       st.sampled_from(["standard", "tilde"]))
def test_stretch_chain_property(g, h, seed, variant):
    o = build_multilevel(g, h, variant, seed=seed)
    d = apsp(g)
    for u in range(g.n):
        for v in range(g.n):
            ans = query_multilevel(o, u, v)
            validate_walk(g, ans.walk, u, v)
            assert 0 <= ans.meet_level <= h
            assert d[u][v] <= ans.reported_length <= multilevel_bound(ans.meet_level) * d[u][v]
            assert ans.reported_length <= o.bound * d[u][v]


def test_ladder_growth_law():
    climbs = 0
    for seed in range(6):
        g = generate_graph("gnm", 512, 1536, ("uniform_int", 1, 20), seed=seed)
        d = apsp_scipy(g)
        o = build_multilevel(g, 3, seed=seed)
        rng = random.Random(seed)
        for _ in range(200):
            u, v = rng.randrange(512), rng.randrange(512)
            ans = o.query(u, v)
            ladder = ans.ladder
            for j in range(len(ladder) - 1):
                (a, b), (a2, b2) = ladder[j], ladder[j + 1]
                assert d[a][a2] <= 3 * d[a][b]
                assert d[b][b2] <= 3 * d[a][b]
                climbs += 1
    assert climbs > 0


def apsp_scipy(g):
    from pathoracle.verify import exact_distances
    return exact_distances(g, range(g.n))


def test_coincident_ladder_splices_empty_middle():
    g = generate_graph("gnm", 200, 300, ("uniform_int", 1, 9), seed=8)
    d = apsp_scipy(g)
    seen = 0
    for seed in range(5):
        o = build_multilevel(g, 3, seed=seed)
        for u in range(0, 200, 7):
            for v in range(0, 200, 11):
                ans = o.query(u, v)
                if ans.ladder and ans.ladder[-1][0] == ans.ladder[-1][1]:
                    seen += 1
                    validate_walk(g, ans.walk, u, v)
                    assert ans.reported_length <= multilevel_bound(ans.meet_level) * d[u][v]
    assert seen > 0


def test_same_vertex_query(c5):
    o = build_multilevel(c5, 2)
    assert o.query(2, 2).walk.vertices == [2]


def test_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        build_multilevel(WeightedGraph(4, [(0, 1, 1), (2, 3, 1)]), 2)


@pytest.mark.parametrize("family", ["gnm", "grid", "path"])
def test_confinement_small(family):
    events = 0
    for seed in range(100):
        if family == "gnm":
            g = generate_graph("gnm", 32, 64, ("uniform_int", 1, 5), seed=seed)
        else:
            g = generate_graph(family, 32, seed=seed)
        o = build_multilevel(g, 2, seed=seed)
        events += o.level_pairs[0].branch_count
        assert audit_branch_confinement(o, 1) == 0
    if family == "path":
        assert events > 0


def test_branch_count_linear():
    g = generate_graph("gnm", 4096, 16384, ("uniform_int", 1, 100), seed=3)
    counts = [build_multilevel(g, 2, seed=s).space.branch_counts[0] for s in range(5)]
    assert max(counts) <= 20 * g.n


def _reachable_objects(root):
    seen = {id(root)}
    stack = [root]
    while stack:
        obj = stack.pop()
        yield obj
        for ref in gc.get_referents(obj):
            if id(ref) not in seen and not isinstance(ref, type):
                seen.add(id(ref))
                stack.append(ref)


def test_tilde_keeps_no_graph():
    g = generate_graph("gnm", 300, 600, ("uniform_int", 1, 9), seed=5)
    o = build_lambda_tilde(g, seed=5)
    assert o.variant == "tilde" and o.h == tilde_levels(300)
    assert not any(isinstance(x, WeightedGraph) for x in _reachable_objects(o))
    d = apsp_scipy(g)
    rng = random.Random(5)
    for _ in range(300):
        u, v = rng.randrange(300), rng.randrange(300)
        ans = o.query(u, v)
        validate_walk(g, ans.walk, u, v)
        assert ans.reported_length <= multilevel_bound(ans.meet_level) * d[u][v]
        assert ans.probes <= 4 * o.h


def test_lambda_tilde_restarts_keep_smallest():
    g = generate_graph("gnm", 200, 400, seed=6)
    o = build_lambda_tilde(g, seed=6, space_constant=0.0, max_builds=3)
    assert o.build_attempts == 3
    assert isinstance(o.query(0, 1).walk, PathWalk)
