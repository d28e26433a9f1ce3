"""Shared instance builders and reference implementations for the tests.

The reference implementations here (Bellman-Ford distances, plain
reachability) are deliberately written independently of the package
internals so the comparisons mean something.
"""

from __future__ import annotations

import random
from math import inf

import pytest

from drcr import DrcrTask, Edge, Network, SrlgTask


def diamond() -> Network:
    """Two routes 0->3: cheap-but-slow via 1, costly-but-fast via 2."""
    return Network(4, [
        Edge(0, 1, 1, 10), Edge(1, 3, 1, 10),
        Edge(0, 2, 5, 1), Edge(2, 3, 5, 1),
    ])


def trap_network() -> Network:
    """Avoidable trap 0->5: cheapest route conflicts with both alternatives.

    Route A (cost 2) shares one SRLG with route B (cost 4) and another with
    route C (cost 30); B conflicts only with A, so the answer is (B, C).
    """
    edges = [
        Edge(0, 1, 1, 1), Edge(1, 5, 1, 1),
        Edge(0, 2, 2, 1), Edge(2, 5, 2, 1),
        Edge(0, 3, 10, 1), Edge(3, 4, 10, 1), Edge(4, 5, 10, 1),
    ]
    return Network(6, edges, [{0, 2}, {1, 4}])


def random_network(rng: random.Random, max_nodes: int = 12,
                   max_edges: int = 30, max_cost: int = 20,
                   max_delay: int = 20, srlg_count: int = 0,
                   min_edges: int = 1) -> Network:
    n = rng.randint(2, max_nodes)
    edge_total = rng.randint(min_edges, max_edges)
    edges = []
    for _ in range(edge_total):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        edges.append(Edge(u, v, rng.randint(1, max_cost), rng.randint(1, max_delay)))
    if not edges:
        edges.append(Edge(0, 1, rng.randint(1, max_cost), rng.randint(1, max_delay)))
    groups = []
    for _ in range(srlg_count):
        size = rng.randint(1, max(1, len(edges) // 2))
        groups.append(set(rng.sample(range(len(edges)), min(size, len(edges)))))
    return Network(n, edges, groups)


def random_task(rng: random.Random, net: Network,
                srlg: bool = False) -> DrcrTask | SrlgTask:
    n = net.node_count
    s = rng.randrange(n)
    t = rng.randrange(n)
    while t == s:
        t = rng.randrange(n)
    max_total_delay = sum(e.delay for e in net.edges)
    d_low = rng.randint(0, max(1, max_total_delay // 3))
    d_up = d_low + rng.randint(0, max(1, max_total_delay // 2))
    base = DrcrTask(s, t, d_low, d_up)
    if not srlg:
        return base
    return SrlgTask(base, rng.randint(0, max(1, d_up)))


def bellman_ford_to_target(net: Network, target: int, metric: str) -> list[float]:
    """Reference distances-to-target by |V|-1 rounds of full relaxation."""
    dist: list[float] = [inf] * net.node_count
    dist[target] = 0
    for _ in range(net.node_count - 1):
        changed = False
        for e in net.edges:
            w = e.cost if metric == "cost" else e.delay
            if dist[e.dst] + w < dist[e.src]:
                dist[e.src] = dist[e.dst] + w
                changed = True
        if not changed:
            break
    return dist


def reachable(net: Network, s: int, excluded: frozenset[int] = frozenset()) -> set[int]:
    """Reference reachability by naive fixpoint iteration."""
    seen = {s}
    while True:
        grew = False
        for eid, e in enumerate(net.edges):
            if eid not in excluded and e.src in seen and e.dst not in seen:
                seen.add(e.dst)
                grew = True
        if not grew:
            return seen


@pytest.fixture
def diamond_net() -> Network:
    return diamond()


@pytest.fixture
def trap_net() -> Network:
    return trap_network()
