"""Exhaustive enumeration, the two optima, and histogram building."""

from __future__ import annotations

import io
import random

import pytest

from drcr import (DrcrTask, Edge, Network, OracleTooLargeError, SrlgTask,
                  build_histogram, enumerate_paths, oracle_drcr,
                  oracle_minmin)

from conftest import random_network, random_task


def complete_digraph(n: int) -> Network:
    return Network(n, [Edge(u, v, 1, 1) for u in range(n)
                       for v in range(n) if u != v])


def test_diamond_has_two_paths(diamond_net):
    paths = enumerate_paths(diamond_net, 0, 3)
    assert sorted(p.total_cost for p in paths) == [2, 10]


def test_complete_five_node_count():
    # fixed s,t plus permutations over 3 intermediates: 1 + 3 + 6 + 6
    assert len(enumerate_paths(complete_digraph(5), 0, 4)) == 16


def test_disconnected_is_empty():
    net = Network(3, [Edge(0, 1, 1, 1)])
    assert enumerate_paths(net, 0, 2) == []


def test_limit_exceeded_raises():
    with pytest.raises(OracleTooLargeError):
        enumerate_paths(complete_digraph(5), 0, 4, limit=10)


def test_oracle_drcr_windows(diamond_net):
    assert oracle_drcr(diamond_net, DrcrTask(0, 3, 0, 15))[0] == 10
    assert oracle_drcr(diamond_net, DrcrTask(0, 3, 0, 1)) is None
    assert oracle_drcr(diamond_net, DrcrTask(0, 3, 0, 10 ** 9))[0] == 2


def test_oracle_minmin_prefers_cheap_protected_route():
    edges = [Edge(0, 1, 1, 1), Edge(1, 3, 1, 1),
             Edge(0, 2, 5, 1), Edge(2, 3, 5, 1)]
    net = Network(4, edges, [{0}, {2}])
    task = SrlgTask(DrcrTask(0, 3, 0, 100), 100)
    cost, pair = oracle_minmin(net, task)
    assert cost == 2 and pair.ap.edges == (0, 1) and pair.pp.edges == (2, 3)


def test_oracle_minmin_shared_srlg_absent():
    edges = [Edge(0, 1, 1, 1), Edge(1, 3, 1, 1),
             Edge(0, 2, 5, 1), Edge(2, 3, 5, 1)]
    net = Network(4, edges, [{0, 2}])
    assert oracle_minmin(net, SrlgTask(DrcrTask(0, 3, 0, 100), 100)) is None


def test_oracle_minmin_wide_diff_reduces_to_disjointness():
    rng = random.Random(61)
    for seed in range(30):
        rng.seed(seed)
        net = random_network(rng, max_nodes=8, max_edges=20,
                             srlg_count=rng.randint(1, 6))
        base = random_task(rng, net)
        wide = SrlgTask(base, base.d_up - base.d_low)
        got = oracle_minmin(net, wide)
        # reference: disjointness plus windows only
        paths = [p for p in enumerate_paths(net, base.source, base.target)
                 if base.d_low <= p.total_delay <= base.d_up]
        paths.sort(key=lambda p: (p.total_cost, p.edges))
        expected = None
        for ap in paths:
            groups = set()
            for eid in ap.edges:
                groups |= net.edge_srlgs[eid]
            for pp in paths:
                if set(ap.edges) & set(pp.edges):
                    continue
                if any(net.edge_srlgs[e] & groups for e in pp.edges):
                    continue
                expected = ap.total_cost
                break
            if expected is not None:
                break
        assert (got[0] if got else None) == expected


def test_histogram_diamond_series(diamond_net):
    hist = build_histogram(diamond_net, DrcrTask(0, 3, 0, 15), 10)
    assert hist.series["all"] == {0: 1, 10: 1}
    assert hist.series["feasible"] == {10: 1}
    assert not hist.truncated


def test_histogram_range_window_adds_upper_only_series(diamond_net):
    hist = build_histogram(diamond_net, DrcrTask(0, 3, 16, 25), 10)
    assert hist.series["feasible_up"] == {0: 1, 10: 1}  # d <= 25
    assert hist.series["feasible"] == {0: 1}            # 16 <= d <= 25
    assert list(hist.series) == ["all", "feasible_up", "feasible"]


def test_histogram_truncation_flag(diamond_net):
    hist = build_histogram(diamond_net, DrcrTask(0, 3, 0, 15), 10, cap=1)
    assert hist.truncated


def test_histogram_containment_on_random_srlg_instances():
    rng = random.Random(71)
    for seed in range(25):
        rng.seed(seed)
        net = random_network(rng, max_nodes=8, max_edges=20,
                             srlg_count=rng.randint(1, 6))
        task = random_task(rng, net, srlg=True)
        hist = build_histogram(net, task, 5)
        assert list(hist.series) == ["all", "feasible", "protected"]
        for b, count in hist.series["protected"].items():
            assert count <= hist.series["feasible"].get(b, 0)
        for b, count in hist.series["feasible"].items():
            assert count <= hist.series["all"].get(b, 0)


def test_histogram_csv_layout(diamond_net):
    hist = build_histogram(diamond_net, DrcrTask(0, 3, 0, 15), 10)
    buf = io.StringIO()
    hist.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "bin_low,all,feasible"
    assert lines[1] == "0,1,0"
    assert lines[2] == "10,1,1"
    assert lines[-1] == "# truncated=false"


def test_histogram_cost_ceiling_limits_sweep(diamond_net):
    hist = build_histogram(diamond_net, DrcrTask(0, 3, 0, 10 ** 6), 10,
                           cost_ceiling=5)
    assert hist.series["all"] == {0: 1}  # the cost-10 path is above the ceiling
