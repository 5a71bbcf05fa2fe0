from __future__ import annotations

import math
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pathoracle.graph import WeightedGraph, generate_graph

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def bellman_ford(g: WeightedGraph, source: int) -> list[float]:
    """Plain Bellman-Ford; shares no code with the library's searches."""
    dist = [math.inf] * g.n
    dist[source] = 0.0
    for _ in range(g.n - 1):
        changed = False
        for a, b, w in g.edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
            if dist[b] + w < dist[a]:
                dist[a] = dist[b] + w
                changed = True
        if not changed:
            break
    return dist


def apsp(g: WeightedGraph) -> list[list[float]]:
    return [bellman_ford(g, s) for s in range(g.n)]


@st.composite
def connected_graphs(draw, min_n=2, max_n=24, max_extra=40, max_w=20):
    """Random connected graphs with integer weights: a random tree plus extra edges."""
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    edges = {}
    for v in range(1, n):
        u = rng.randrange(v)
        edges[(u, v)] = rng.randint(1, max_w)
    extra = draw(st.integers(0, max_extra))
    for _ in range(extra):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges[(min(a, b), max(a, b))] = rng.randint(1, max_w)
    return WeightedGraph(n, [(a, b, w) for (a, b), w in edges.items()], key_seed=seed)


@pytest.fixture
def p4():
    return generate_graph("path", 4)


@pytest.fixture
def c5():
    return generate_graph("cycle", 5)


@pytest.fixture(scope="session")
def gnm128():
    return generate_graph("gnm", 128, 512, ("uniform_int", 1, 100), seed=7)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
