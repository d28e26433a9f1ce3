"""Dataset generation: random graphs, SRLG assignment, tasks, trap filtering.

Two topology families: directed Erdos-Renyi graphs with an edge probability
calibrated to a target mean out-degree, and scale-free graphs from the
NetworkX Barabasi-Albert generator, made directed by emitting both
directions of every attachment edge.  Costs and delays are independent
uniform integers (default range 1..100).

SRLG assignment covers every edge, in one of two patterns: ``random``
groups draw a size in 1..40 and that many edges from the whole graph;
``star`` groups take egress edges of a single node, sized around the mean
out-degree.

Everything is deterministic under its seed: the same spec always produces
bit-identical artifacts.

Task windows are scaled from the exact minimum delay D of each (s, t) pair.
Range (single-path) tasks draw a band that may sit well above D:
d_low = ceil(gamma * D) with gamma ~ U[0.6, 3.5] and
d_up = d_low + ceil(delta * D) with delta ~ U[0.05, 0.4], which yields a mix
of easy, hard and outright infeasible tasks; the infeasible ones are what
filter_tasks is for.  Disjoint-pair tasks use d_low = 0 with
d_up = ceil(beta * D), beta ~ U[1.2, 2.0] (the minimum-delay path is then
always inside the window) and draw d_diff uniformly from
[0.1 * d_up, 0.5 * d_up].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil

import networkx as nx
import numpy as np

from .btcs import BtcsConfig, solve_btcs, try_protect
from .network import DrcrTask, Edge, Network, SrlgTask, Task
from .pulse import SearchControl, pulse_optimal
from .report import INFEASIBLE, PAIR
from .trees import TreeCache

ER = "er"
SCALE_FREE = "scale-free"


class GenerationError(RuntimeError):
    """Sampling could not satisfy the request within its retry budget."""


@dataclass(frozen=True)
class GenSpec:
    """Graph generation parameters.

    ``density_param`` is the target mean out-degree for ER graphs and the
    attachment parameter m for scale-free graphs.
    """

    topology: str
    nodes: int
    density_param: int
    cost_range: tuple[int, int] = (1, 100)
    delay_range: tuple[int, int] = (1, 100)
    seed: int = 0

    def __post_init__(self):
        if self.topology not in (ER, SCALE_FREE):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.nodes < 2:
            raise ValueError("nodes must be >= 2")
        if self.density_param < 1:
            raise ValueError("density_param must be >= 1")
        for lo, hi in (self.cost_range, self.delay_range):
            if not 1 <= lo <= hi:
                raise ValueError(f"bad range [{lo}, {hi}]")


@dataclass(frozen=True)
class SrlgSpec:
    """SRLG generation parameters: ``random`` or ``star`` pattern."""

    pattern: str
    seed: int = 0
    random_size_range: tuple[int, int] = (1, 40)

    def __post_init__(self):
        if self.pattern not in ("random", "star"):
            raise ValueError(f"unknown srlg pattern {self.pattern!r}")
        lo, hi = self.random_size_range
        if not 1 <= lo <= hi <= 40:
            raise ValueError(f"size range must lie within [1, 40], got [{lo}, {hi}]")


def gen_graph(spec: GenSpec) -> Network:
    """A seeded random network per the spec; identical spec, identical graph."""
    rng = np.random.default_rng(spec.seed)
    clo, chi = spec.cost_range
    dlo, dhi = spec.delay_range
    n = spec.nodes
    edges: list[Edge] = []

    if spec.topology == ER:
        p = min(1.0, spec.density_param / (n - 1))
        for u in range(n):
            hits = rng.random(n) < p
            hits[u] = False
            targets = np.flatnonzero(hits)
            costs = rng.integers(clo, chi + 1, size=len(targets))
            delays = rng.integers(dlo, dhi + 1, size=len(targets))
            for v, c, d in zip(targets, costs, delays):
                edges.append(Edge(u, int(v), int(c), int(d)))
    else:
        m = spec.density_param
        if m >= n:
            raise GenerationError(f"attachment parameter {m} needs more than {n} nodes")
        graph = nx.barabasi_albert_graph(n, m, seed=spec.seed)
        for u, v in graph.edges():
            for a, b in ((u, v), (v, u)):
                edges.append(Edge(a, b,
                                  int(rng.integers(clo, chi + 1)),
                                  int(rng.integers(dlo, dhi + 1))))

    return Network(n, edges)


def gen_srlg(net: Network, spec: SrlgSpec) -> tuple[frozenset[int], ...]:
    """SRLG groups covering every edge of the network.

    random: sizes uniform in the configured range, members uniform over all
    edges, repeated until coverage.  star: members are egress edges of one
    node, sized uniformly in [1, ceil(mean out-degree)] clamped to the
    node's egress count; the node is the origin of the first still-uncovered
    edge in a seeded random sweep, which guarantees progress.
    """
    if not net.edges:
        raise GenerationError("network has no edges")
    rng = np.random.default_rng(spec.seed)
    edge_count = len(net.edges)
    groups: list[frozenset[int]] = []
    uncovered = set(range(edge_count))

    if spec.pattern == "random":
        lo, hi = spec.random_size_range
        while uncovered:
            k = min(int(rng.integers(lo, hi + 1)), edge_count)
            members = rng.choice(edge_count, size=k, replace=False)
            group = frozenset(int(e) for e in members)
            groups.append(group)
            uncovered -= group
    else:
        mean_deg = ceil(edge_count / net.node_count)
        for eid in rng.permutation(edge_count):
            eid = int(eid)
            if eid not in uncovered:
                continue
            egress = net.adjacency[net.edges[eid].src]
            k = min(int(rng.integers(1, mean_deg + 1)), len(egress))
            others = [e for e in egress if e != eid]
            group = {eid}
            if k > 1 and others:
                picks = rng.choice(len(others), size=min(k - 1, len(others)),
                                   replace=False)
                group.update(others[i] for i in picks)
            groups.append(frozenset(group))
            uncovered -= group

    return tuple(groups)


def gen_tasks(net: Network, count: int, kind: str, seed: int = 0, *,
              cache: TreeCache | None = None) -> list[Task]:
    """``count`` tasks with distinct random (s, t) pairs, windows per module rule.

    kind ``drcr`` emits range tasks (nonzero d_low); kind ``srlg`` emits
    d_low = 0 tasks carrying a d_diff.  Pairs without an s->t path are
    resampled; a fixed retry budget turns exhaustion into GenerationError.
    """
    if kind not in ("drcr", "srlg"):
        raise ValueError(f"unknown task kind {kind!r}")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    cache = cache or TreeCache(net)
    n = net.node_count
    tasks: list[Task] = []
    used: set[tuple[int, int]] = set()
    attempts = max(1000, 200 * count)
    while len(tasks) < count:
        if attempts <= 0:
            raise GenerationError(
                f"could not sample {count} distinct connected pairs "
                f"({len(tasks)} found)")
        attempts -= 1
        s = int(rng.integers(0, n))
        t = int(rng.integers(0, n))
        if s == t or (s, t) in used:
            continue
        min_delay = cache.get(t).min_delay_to_target[s]
        if min_delay == float("inf"):
            continue
        used.add((s, t))
        if kind == "drcr":
            d_low = ceil(float(rng.uniform(0.6, 3.5)) * min_delay)
            d_up = d_low + ceil(float(rng.uniform(0.05, 0.4)) * min_delay)
            tasks.append(DrcrTask(s, t, d_low, d_up))
        else:
            d_up = ceil(float(rng.uniform(1.2, 2.0)) * min_delay)
            d_diff = int(rng.integers(ceil(0.1 * d_up), int(0.5 * d_up) + 1))
            tasks.append(SrlgTask(DrcrTask(s, t, 0, d_up), d_diff))
    return tasks


FEASIBLE = "feasible"
AVOIDABLE = "avoidable"
UNAVOIDABLE = "unavoidable"
UNKNOWN = "unknown"


def filter_tasks(net: Network, tasks: list[Task], kind: str, *,
                 cache: TreeCache | None = None,
                 btcs_cfg: BtcsConfig | None = None,
                 control: SearchControl | None = None
                 ) -> tuple[list[Task], list[str]]:
    """Keep the evaluation-worthy tasks, with a label per kept task.

    drcr: keeps tasks that have a feasible path at all (label ``feasible``).
    srlg: keeps only traps -- the cheapest feasible AP has no protection --
    labelled ``avoidable`` or ``unavoidable`` by whether the corridor solver
    finds a pair(``unknown`` if it hits a configured cap first).
    """
    if kind not in ("drcr", "srlg"):
        raise ValueError(f"unknown task kind {kind!r}")
    cache = cache or TreeCache(net)
    kept: list[Task] = []
    labels: list[str] = []
    for task in tasks:
        if kind == "drcr":
            if not isinstance(task, DrcrTask):
                raise ValueError(f"expected single-path tasks, got {task!r}")
            trees = cache.get(task.target)
            if pulse_optimal(net, trees, task, control=control) is not None:
                kept.append(task)
                labels.append(FEASIBLE)
        else:
            if not isinstance(task, SrlgTask):
                raise ValueError(f"expected disjoint-pair tasks, got {task!r}")
            trees = cache.get(task.target)
            ap = pulse_optimal(net, trees, task.base, control=control)
            if ap is None:
                continue
            if try_protect(net, trees, task, ap, control=control) is not None:
                continue
            _, report = solve_btcs(net, trees, task,
                                   btcs_cfg or BtcsConfig(), control=control)
            kept.append(task)
            if report.outcome == PAIR:
                labels.append(AVOIDABLE)
            elif report.outcome == INFEASIBLE:
                labels.append(UNAVOIDABLE)
            else:
                labels.append(UNKNOWN)
    return kept, labels


def write_manifest(artifact_path, kind: str, params: dict) -> str:
    """Record what produced an artifact, next to it, as JSON text."""
    manifest_path = f"{artifact_path}.manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as f:
        json.dump({"artifact": str(artifact_path), "kind": kind,
                   "params": params}, f, indent=2, sort_keys=True)
        f.write("\n")
    return manifest_path
