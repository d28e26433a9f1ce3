"""Network data model, SRLG index and the on-disk text formats.

The network is a directed graph over dense 0-based node ids.  Every edge
carries a positive integer cost and delay and is identified by its dense
0-based EdgeId (file line order).  SRLGs (shared risk link groups) are sets
of EdgeIds with dense 0-based group ids; ``edge_srlgs`` is the exact inverse
index.  Parallel edges are allowed and get distinct EdgeIds.

File formats (UTF-8 text, decimal integers):

* graph file:  first line ``nodes,<N>``, then one edge per line
  ``from,to,cost,delay``.
* SRLG file:   one group per line ``srlg_id:e0,e1,...`` with EdgeId
  references; group ids must appear in order 0,1,2,...
* task file:   one task per line ``src,dst,d_low,d_up[,d_diff]`` -- the
  fifth column is present exactly for SRLG (disjoint-pair) tasks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union


class ParseError(ValueError):
    """A line of an input file does not match the expected grammar."""

    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class IntegrityError(ValueError):
    """Structurally valid input that references nonexistent nodes or edges."""


class Edge(NamedTuple):
    src: int
    dst: int
    cost: int
    delay: int


def _check_positive_int(value, what: str):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise IntegrityError(f"{what} must be a positive integer, got {value!r}")


class Network:
    """Immutable directed network with per-edge cost/delay and SRLG index.

    Attributes:
        node_count: number of nodes (ids 0..node_count-1).
        edges: tuple of Edge, indexed by EdgeId.
        adjacency: per-node tuple of egress EdgeIds.
        srlg_groups: tuple of frozensets of EdgeId, indexed by SrlgId.
        edge_srlgs: per-edge frozenset of SrlgIds (inverse of srlg_groups).

    Instances never change after construction, so any number of concurrent
    readers is safe.
    """

    __slots__ = ("node_count", "edges", "adjacency", "srlg_groups",
                 "edge_srlgs", "min_edge_cost", "max_edge_cost")

    def __init__(self, node_count: int, edges: Iterable[Edge],
                 srlg_groups: Iterable[Iterable[int]] = ()):
        if not isinstance(node_count, int) or node_count < 1:
            raise IntegrityError(f"node count must be >= 1, got {node_count!r}")
        self.node_count = node_count
        self.edges = tuple(Edge(*e) for e in edges)

        adjacency: list[list[int]] = [[] for _ in range(node_count)]
        for eid, e in enumerate(self.edges):
            for node in (e.src, e.dst):
                if not 0 <= node < node_count:
                    raise IntegrityError(
                        f"edge {eid} references node {node} outside 0..{node_count - 1}")
            _check_positive_int(e.cost, f"edge {eid} cost")
            _check_positive_int(e.delay, f"edge {eid} delay")
            adjacency[e.src].append(eid)
        self.adjacency = tuple(tuple(a) for a in adjacency)

        groups = tuple(frozenset(g) for g in srlg_groups)
        inverse: list[set[int]] = [set() for _ in self.edges]
        for gid, group in enumerate(groups):
            if not group:
                raise IntegrityError(f"srlg group {gid} is empty")
            for eid in group:
                if not isinstance(eid, int) or not 0 <= eid < len(self.edges):
                    raise IntegrityError(
                        f"srlg group {gid} references unknown edge {eid!r}")
                inverse[eid].add(gid)
        self.srlg_groups = groups
        self.edge_srlgs = tuple(frozenset(s) for s in inverse)

        costs = [e.cost for e in self.edges]
        self.min_edge_cost = min(costs) if costs else None
        self.max_edge_cost = max(costs) if costs else None

    def with_srlgs(self, srlg_groups: Iterable[Iterable[int]]) -> "Network":
        """A copy of this network with the SRLG index replaced."""
        return Network(self.node_count, self.edges, srlg_groups)

    def path(self, edge_ids: Sequence[int]) -> "Path":
        """Build a Path from EdgeIds, computing the cached totals."""
        es = self.edges
        return Path(tuple(edge_ids),
                    sum(es[eid].cost for eid in edge_ids),
                    sum(es[eid].delay for eid in edge_ids))

    def max_elementary_path_cost(self) -> int:
        """Upper bound on the cost of any elementary path."""
        return self.node_count * (self.max_edge_cost or 0)

    def __eq__(self, other):
        return (isinstance(other, Network)
                and self.node_count == other.node_count
                and self.edges == other.edges
                and self.srlg_groups == other.srlg_groups)

    def __hash__(self):
        return hash((self.node_count, self.edges, self.srlg_groups))

    def __repr__(self):
        return (f"Network(nodes={self.node_count}, edges={len(self.edges)}, "
                f"srlgs={len(self.srlg_groups)})")


class NetworkView:
    """Non-destructive overlay of a Network with some edges masked out.

    Views are cheap per-search values; the underlying network is shared and
    never mutated.  An empty exclusion set makes the view equivalent to the
    full network.
    """

    __slots__ = ("net", "excluded")

    def __init__(self, net: Network, excluded: frozenset[int] = frozenset()):
        self.net = net
        self.excluded = frozenset(excluded)

    def __repr__(self):
        return f"NetworkView({self.net!r}, excluded={len(self.excluded)})"


NetLike = Union[Network, NetworkView]


def as_view(net: NetLike) -> NetworkView:
    if isinstance(net, NetworkView):
        return net
    return NetworkView(net)


@dataclass(frozen=True, slots=True)
class Path:
    """An edge sequence with cached cost/delay totals."""

    edges: tuple[int, ...]
    total_cost: int
    total_delay: int


def check_path(net: Network, path: Path, source: int | None = None,
               target: int | None = None) -> None:
    """Verify all Path invariants from raw edge data; raise IntegrityError.

    Checks head-to-tail chaining, elementarity, the cached totals and
    (when given) the endpoint nodes.
    """
    if not path.edges:
        raise IntegrityError("empty path")
    edges = net.edges
    cost = delay = 0
    seen_nodes = set()
    prev_dst = None
    for eid in path.edges:
        if not 0 <= eid < len(edges):
            raise IntegrityError(f"path references unknown edge {eid}")
        e = edges[eid]
        if prev_dst is not None and e.src != prev_dst:
            raise IntegrityError(f"edge {eid} does not chain: {prev_dst} != {e.src}")
        if e.src in seen_nodes:
            raise IntegrityError(f"path revisits node {e.src}")
        seen_nodes.add(e.src)
        prev_dst = e.dst
        cost += e.cost
        delay += e.delay
    if prev_dst in seen_nodes:
        raise IntegrityError(f"path revisits node {prev_dst}")
    if cost != path.total_cost or delay != path.total_delay:
        raise IntegrityError(
            f"cached totals ({path.total_cost},{path.total_delay}) do not match "
            f"recomputed ({cost},{delay})")
    if source is not None and edges[path.edges[0]].src != source:
        raise IntegrityError(f"path does not start at {source}")
    if target is not None and prev_dst != target:
        raise IntegrityError(f"path does not end at {target}")


@dataclass(frozen=True, slots=True)
class DrcrTask:
    """A single-path routing request: min-cost path with delay in [d_low, d_up].

    d_up may be math.inf for internal delay-relaxed searches; tasks read from
    files always carry finite integers.
    """

    source: int
    target: int
    d_low: int
    d_up: int

    def __post_init__(self):
        if self.source == self.target:
            raise IntegrityError("task source equals target")
        if self.d_low < 0 or self.d_low > self.d_up:
            raise IntegrityError(f"bad delay window [{self.d_low}, {self.d_up}]")


@dataclass(frozen=True, slots=True)
class SrlgTask:
    """A disjoint-pair request: the base window plus the delay-difference limit."""

    base: DrcrTask
    d_diff: int

    def __post_init__(self):
        if self.d_diff < 0:
            raise IntegrityError(f"d_diff must be >= 0, got {self.d_diff}")

    @property
    def source(self) -> int:
        return self.base.source

    @property
    def target(self) -> int:
        return self.base.target

    @property
    def d_low(self) -> int:
        return self.base.d_low

    @property
    def d_up(self) -> int:
        return self.base.d_up


Task = Union[DrcrTask, SrlgTask]


def remove_conflicting_edges(net: Network, ap: Path) -> NetworkView:
    """View of ``net`` without any edge that conflicts with the given path.

    An edge conflicts when it shares an SRLG with any edge of ``ap``; the
    edges of ``ap`` itself are always excluded as well (an edge conflicts
    with itself even without SRLG membership, so disjoint pairs are also
    link-disjoint).
    """
    excluded = set(ap.edges)
    groups = net.srlg_groups
    edge_srlgs = net.edge_srlgs
    for eid in ap.edges:
        if not 0 <= eid < len(net.edges):
            raise IntegrityError(f"path references unknown edge {eid}")
        for gid in edge_srlgs[eid]:
            excluded.update(groups[gid])
    return NetworkView(net, frozenset(excluded))


def is_connected(net: NetLike, s: int, t: int) -> bool:
    """True iff a directed path s -> t exists, ignoring all constraints."""
    view = as_view(net)
    base = view.net
    if not (0 <= s < base.node_count and 0 <= t < base.node_count):
        raise IntegrityError(f"node out of range: s={s}, t={t}")
    if s == t:
        return True
    excluded = view.excluded
    edges = base.edges
    adjacency = base.adjacency
    seen = bytearray(base.node_count)
    seen[s] = 1
    stack = [s]
    while stack:
        u = stack.pop()
        for eid in adjacency[u]:
            if eid in excluded:
                continue
            v = edges[eid].dst
            if v == t:
                return True
            if not seen[v]:
                seen[v] = 1
                stack.append(v)
    return False


# ---- file formats ----------------------------------------------------------


def _parse_int(token: str, path, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(path, line_no, f"{what} is not an integer: {token!r}") from None


def _iter_lines(path):
    with open(path, "r", encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.strip()
            if line:
                yield line_no, line


def load_network(graph_file, srlg_file=None) -> Network:
    """Load a network from a graph file and an optional SRLG file."""
    lines = _iter_lines(graph_file)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise ParseError(graph_file, 1, "empty graph file") from None
    parts = header.split(",")
    if len(parts) != 2 or parts[0] != "nodes":
        raise ParseError(graph_file, line_no, f"expected 'nodes,<N>', got {header!r}")
    node_count = _parse_int(parts[1], graph_file, line_no, "node count")

    edges = []
    for line_no, line in lines:
        parts = line.split(",")
        if len(parts) != 4:
            raise ParseError(graph_file, line_no,
                             f"expected 'from,to,cost,delay', got {line!r}")
        src, dst, cost, delay = (
            _parse_int(p, graph_file, line_no, name)
            for p, name in zip(parts, ("from", "to", "cost", "delay")))
        if cost < 1 or delay < 1:
            raise ParseError(graph_file, line_no,
                             "cost and delay must be positive integers")
        edges.append(Edge(src, dst, cost, delay))

    groups: list[list[int]] = []
    if srlg_file is not None:
        for line_no, line in _iter_lines(srlg_file):
            gid_part, sep, rest = line.partition(":")
            if not sep:
                raise ParseError(srlg_file, line_no,
                                 f"expected 'srlg_id:e0,e1,...', got {line!r}")
            gid = _parse_int(gid_part, srlg_file, line_no, "srlg id")
            if gid != len(groups):
                raise ParseError(srlg_file, line_no,
                                 f"srlg ids must be dense and in order; expected "
                                 f"{len(groups)}, got {gid}")
            members = [_parse_int(p, srlg_file, line_no, "edge id")
                       for p in rest.split(",") if p != ""]
            if not members:
                raise ParseError(srlg_file, line_no, "empty srlg group")
            groups.append(members)

    return Network(node_count, edges, groups)


def save_network(net: Network, graph_file, srlg_file=None) -> None:
    """Write a network back out in the load_network formats."""
    with open(graph_file, "w", encoding="utf-8") as f:
        f.write(f"nodes,{net.node_count}\n")
        for e in net.edges:
            f.write(f"{e.src},{e.dst},{e.cost},{e.delay}\n")
    if srlg_file is not None:
        with open(srlg_file, "w", encoding="utf-8") as f:
            for gid, group in enumerate(net.srlg_groups):
                f.write(f"{gid}:{','.join(str(e) for e in sorted(group))}\n")


def parse_task_line(line: str, path="<string>", line_no: int = 0) -> Task:
    parts = line.strip().split(",")
    if len(parts) not in (4, 5):
        raise ParseError(path, line_no,
                         f"expected 'src,dst,d_low,d_up[,d_diff]', got {line!r}")
    names = ("src", "dst", "d_low", "d_up", "d_diff")
    values = [_parse_int(p, path, line_no, n) for p, n in zip(parts, names)]
    try:
        base = DrcrTask(values[0], values[1], values[2], values[3])
        if len(values) == 5:
            return SrlgTask(base, values[4])
        return base
    except IntegrityError as exc:
        raise ParseError(path, line_no, str(exc)) from None


def load_tasks(path) -> list[Task]:
    return [parse_task_line(line, path, line_no) for line_no, line in _iter_lines(path)]


def save_tasks(tasks: Iterable[Task], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for task in tasks:
            f.write(format_task(task) + "\n")


def format_task(task: Task) -> str:
    if isinstance(task, SrlgTask):
        b = task.base
        return f"{b.source},{b.target},{b.d_low},{b.d_up},{task.d_diff}"
    return f"{task.source},{task.target},{task.d_low},{task.d_up}"


INF = math.inf
