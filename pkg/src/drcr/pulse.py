"""Depth-first pulse search over a network view, in three variants.

All variants walk elementary paths from the task source with an explicit
stack (graphs can be deeper than any recursion limit) and track visited
nodes, cutting branches with two prunings backed by the reverse trees:

* infeasibility: accumulated delay plus the delay lower bound to the target
  already exceeds the window top;
* cost: accumulated cost plus the cost lower bound to the target cannot beat
  the incumbent (optimal search) or the corridor top (corridor search).

Egress edges are explored cheapest-completion first (edge cost plus the
cost-to-target bound, ties by EdgeId).  The order is deterministic so
results are reproducible, and because it is sorted by exactly the quantity
the cost pruning tests, a single failed test cuts all remaining siblings at
once.  Edges whose head cannot reach the target at all are dropped up front;
no s->t path can use them.

A search never mutates the network, the trees or the view, so any number of
engines may run concurrently over shared inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from threading import Event
from time import monotonic

from .network import DrcrTask, NetLike, Path, as_view
from .trees import ReverseTrees

INF = inf


class SearchInterrupted(Exception):
    """Base for cooperative search interruption."""


class SearchTimeout(SearchInterrupted):
    """The search ran past its deadline."""


class SearchCancelled(SearchInterrupted):
    """The search was told to stop by its coordinator."""


@dataclass
class SearchCounters:
    """Instrumentation accumulated across engine calls."""

    pulses: int = 0
    infeasibility_prunes: int = 0
    cost_prunes: int = 0

    def merge(self, other: "SearchCounters") -> None:
        self.pulses += other.pulses
        self.infeasibility_prunes += other.infeasibility_prunes
        self.cost_prunes += other.cost_prunes


@dataclass
class SearchControl:
    """Cooperative deadline/cancellation, polled between pulses."""

    deadline: float | None = None
    stop: Event | None = None
    poll_every: int = 512

    @classmethod
    def from_time_limit_ms(cls, time_limit_ms: float | None,
                           stop: Event | None = None) -> "SearchControl | None":
        if time_limit_ms is None and stop is None:
            return None
        deadline = None if time_limit_ms is None else monotonic() + time_limit_ms / 1000.0
        return cls(deadline=deadline, stop=stop)


def _poll(control: SearchControl) -> None:
    stop = control.stop
    if stop is not None and stop.is_set():
        raise SearchCancelled()
    deadline = control.deadline
    if deadline is not None and monotonic() > deadline:
        raise SearchTimeout()


@dataclass(frozen=True, slots=True)
class CostCorridor:
    """Half-open cost interval [c_low, c_up); c_up may be math.inf."""

    c_low: int
    c_up: float

    def __post_init__(self):
        if not self.c_low < self.c_up:
            raise ValueError(f"empty corridor [{self.c_low}, {self.c_up})")


SearchOrder = list[list[tuple]]


def build_search_order(net: NetLike, trees: ReverseTrees) -> SearchOrder:
    """Per-node egress rows (cost_lb, delay_lb, cost, delay, dst, eid).

    The lb entries fold the edge's own weight into the reverse-tree bound of
    its head, so the engine loops test a single addition.  Rows are sorted
    ascending by (cost_lb, eid).  Building the order once per task and
    sharing it across bound probes, corridors and protection searches is
    much cheaper than re-sorting per engine call.
    """
    base = as_view(net).net
    min_cost = trees.min_cost_to_target
    min_delay = trees.min_delay_to_target
    edges = base.edges
    order: SearchOrder = []
    for adj in base.adjacency:
        row = []
        for eid in adj:
            e = edges[eid]
            mc = min_cost[e.dst]
            if mc == INF:
                continue
            row.append((e.cost + mc, e.delay + min_delay[e.dst],
                        e.cost, e.delay, e.dst, eid))
        row.sort(key=lambda r: (r[0], r[5]))
        order.append(row)
    return order


def pulse_optimal(net: NetLike, trees: ReverseTrees, task: DrcrTask,
                  initial_bound: float = INF, *, order: SearchOrder | None = None,
                  counters: SearchCounters | None = None,
                  control: SearchControl | None = None,
                  prune: bool = True) -> Path | None:
    """Minimum-cost elementary path within the delay window, below the bound.

    Returns the cheapest path P with d_low <= d(P) <= d_up and
    c(P) < initial_bound, or None when no such path exists.  The cost
    pruning is non-strict (a branch that can at best tie the incumbent is
    cut), which never loses a strictly better path.  ``prune=False`` runs
    the same exhaustive walk without either pruning; it must return the
    same cost and exists for the pruning-neutrality checks.
    """
    view = as_view(net)
    base = view.net
    excluded = view.excluded
    if order is None:
        order = build_search_order(base, trees)
    s, t = task.source, task.target
    d_low, d_up = task.d_low, task.d_up

    best_cost = initial_bound
    best_edges: list[int] | None = None
    pulses = 1
    infeas = 0
    cost_prunes = 0
    poll_every = control.poll_every if control is not None else 0
    poll_left = poll_every

    visited = bytearray(base.node_count)
    visited[s] = 1
    path: list[int] = []
    frames: list[list] = [[s, order[s], 0, 0, 0]]
    cur_cost = 0
    cur_delay = 0
    try:
        while frames:
            frame = frames[-1]
            row = frame[1]
            i = frame[2]
            n_row = len(row)
            moved = False
            while i < n_row:
                c_lb, d_lb, ec, ed, to, eid = row[i]
                i += 1
                if prune and cur_cost + c_lb >= best_cost:
                    cost_prunes += n_row - i + 1
                    break
                if eid in excluded or visited[to]:
                    continue
                if prune and cur_delay + d_lb > d_up:
                    infeas += 1
                    continue
                pulses += 1
                if poll_every:
                    poll_left -= 1
                    if poll_left <= 0:
                        poll_left = poll_every
                        _poll(control)
                new_delay = cur_delay + ed
                if to == t:
                    new_cost = cur_cost + ec
                    if d_low <= new_delay <= d_up and new_cost < best_cost:
                        best_cost = new_cost
                        best_edges = path + [eid]
                    # t is now on the path; no deeper pulse can end there again
                    continue
                frame[2] = i
                visited[to] = 1
                path.append(eid)
                cur_cost += ec
                cur_delay = new_delay
                frames.append([to, order[to], 0, ec, ed])
                moved = True
                break
            if moved:
                continue
            fr = frames.pop()
            if frames:
                path.pop()
                cur_cost -= fr[3]
                cur_delay -= fr[4]
                visited[fr[0]] = 0
    finally:
        if counters is not None:
            counters.pulses += pulses
            counters.infeasibility_prunes += infeas
            counters.cost_prunes += cost_prunes
    if best_edges is None:
        return None
    return base.path(best_edges)


def _corridor_scan(view, trees, task, c_low, c_up, order, counters, control,
                   collect: bool, cap: float):
    """Walk all window-feasible paths with cost in [c_low, c_up).

    Returns (paths, truncated, more_above) when collecting, else
    (count, truncated, more_above).  The corridor cost pruning is strict
    (cut only when the optimistic completion exceeds c_up), mirroring the
    half-open collection test; boundary branches are explored and rejected
    at the terminal.

    ``more_above`` False is a proof that no window-feasible path of cost
    >= c_up exists at all: nothing was cut by the cost pruning (so the walk
    covered the complete delay-feasible space) and no in-window terminal
    reached c_up.  Ascending sweeps use it to stop instead of scanning up
    to the worst-case cost bound.  A capped (truncated) walk proves
    nothing, so it reports more_above True.
    """
    base = view.net
    excluded = view.excluded
    s, t = task.source, task.target
    d_low, d_up = task.d_low, task.d_up

    found: list[Path] = []
    count = 0
    truncated = False
    more_above = False
    pulses = 1
    infeas = 0
    cost_prunes = 0
    poll_every = control.poll_every if control is not None else 0
    poll_left = poll_every

    visited = bytearray(base.node_count)
    visited[s] = 1
    path: list[int] = []
    frames: list[list] = [[s, order[s], 0, 0, 0]]
    cur_cost = 0
    cur_delay = 0
    try:
        while frames:
            frame = frames[-1]
            row = frame[1]
            i = frame[2]
            n_row = len(row)
            moved = False
            while i < n_row:
                c_lb, d_lb, ec, ed, to, eid = row[i]
                i += 1
                if cur_cost + c_lb > c_up:
                    cost_prunes += n_row - i + 1
                    more_above = True
                    break
                if eid in excluded or visited[to]:
                    continue
                if cur_delay + d_lb > d_up:
                    infeas += 1
                    continue
                pulses += 1
                if poll_every:
                    poll_left -= 1
                    if poll_left <= 0:
                        poll_left = poll_every
                        _poll(control)
                new_delay = cur_delay + ed
                if to == t:
                    new_cost = cur_cost + ec
                    if d_low <= new_delay <= d_up:
                        if new_cost >= c_up:
                            more_above = True  # lands exactly on the boundary
                        elif c_low <= new_cost:
                            if collect:
                                found.append(base.path(path + [eid]))
                            count += 1
                            if count >= cap:
                                return (found if collect else count), True, True
                    continue
                frame[2] = i
                visited[to] = 1
                path.append(eid)
                cur_cost += ec
                cur_delay = new_delay
                frames.append([to, order[to], 0, ec, ed])
                moved = True
                break
            if moved:
                continue
            fr = frames.pop()
            if frames:
                path.pop()
                cur_cost -= fr[3]
                cur_delay -= fr[4]
                visited[fr[0]] = 0
    finally:
        if counters is not None:
            counters.pulses += pulses
            counters.infeasibility_prunes += infeas
            counters.cost_prunes += cost_prunes
    return (found if collect else count), truncated, more_above


def scan_corridor_paths(net: NetLike, trees: ReverseTrees, task: DrcrTask,
                        corridor: CostCorridor, *,
                        order: SearchOrder | None = None,
                        counters: SearchCounters | None = None,
                        control: SearchControl | None = None
                        ) -> tuple[list[Path], bool]:
    """Corridor enumeration plus the can-anything-live-above proof bit.

    Same path set as pulse_all_in_corridor; the second value is False only
    when the scan proved no window-feasible path of cost >= c_up exists, so
    ascending corridor consumers can stop early.
    """
    view = as_view(net)
    if order is None:
        order = build_search_order(view.net, trees)
    paths, _, more_above = _corridor_scan(view, trees, task, corridor.c_low,
                                          corridor.c_up, order, counters,
                                          control, collect=True, cap=INF)
    return paths, more_above


def pulse_all_in_corridor(net: NetLike, trees: ReverseTrees, task: DrcrTask,
                          corridor: CostCorridor, *,
                          order: SearchOrder | None = None,
                          counters: SearchCounters | None = None,
                          control: SearchControl | None = None) -> list[Path]:
    """Exactly the elementary paths with the window delay and corridor cost.

    No incumbent is kept and no bound is updated; every path with
    d_low <= d(P) <= d_up and c_low <= c(P) < c_up is returned, in
    discovery order.
    """
    return scan_corridor_paths(net, trees, task, corridor, order=order,
                               counters=counters, control=control)[0]


def pulse_first_feasible(net: NetLike, trees: ReverseTrees, task: DrcrTask, *,
                         order: SearchOrder | None = None,
                         counters: SearchCounters | None = None,
                         control: SearchControl | None = None) -> Path | None:
    """Any elementary path satisfying the delay window, at first discovery.

    Cost is not tracked and only the infeasibility pruning runs; the walk
    stops as soon as a terminal satisfies the window, so the result carries
    no optimality claim.
    """
    view = as_view(net)
    base = view.net
    excluded = view.excluded
    if order is None:
        order = build_search_order(base, trees)
    s, t = task.source, task.target
    d_low, d_up = task.d_low, task.d_up

    pulses = 1
    infeas = 0
    poll_every = control.poll_every if control is not None else 0
    poll_left = poll_every

    visited = bytearray(base.node_count)
    visited[s] = 1
    path: list[int] = []
    frames: list[list] = [[s, order[s], 0, 0, 0]]
    cur_delay = 0
    try:
        while frames:
            frame = frames[-1]
            row = frame[1]
            i = frame[2]
            n_row = len(row)
            moved = False
            while i < n_row:
                _c_lb, d_lb, _ec, ed, to, eid = row[i]
                i += 1
                if eid in excluded or visited[to]:
                    continue
                if cur_delay + d_lb > d_up:
                    infeas += 1
                    continue
                pulses += 1
                if poll_every:
                    poll_left -= 1
                    if poll_left <= 0:
                        poll_left = poll_every
                        _poll(control)
                new_delay = cur_delay + ed
                if to == t:
                    if d_low <= new_delay <= d_up:
                        return base.path(path + [eid])
                    continue
                frame[2] = i
                visited[to] = 1
                path.append(eid)
                cur_delay = new_delay
                frames.append([to, order[to], 0, 0, ed])
                moved = True
                break
            if moved:
                continue
            fr = frames.pop()
            if frames:
                path.pop()
                cur_delay -= fr[4]
                visited[fr[0]] = 0
    finally:
        if counters is not None:
            counters.pulses += pulses
            counters.infeasibility_prunes += infeas
    return None


def count_paths_capped(net: NetLike, trees: ReverseTrees, task: DrcrTask,
                       bin_width: int, cap: int, *, origin: int = 0,
                       cost_ceiling: int | None = None,
                       order: SearchOrder | None = None,
                       counters: SearchCounters | None = None,
                       control: SearchControl | None = None) -> tuple[dict[int, int], bool]:
    """Per-cost-bin counts of paths satisfying the task's delay window.

    Pass a delay-relaxed task (d_up = math.inf) to count every path.  Bins
    are half-open [b, b + bin_width) starting at ``origin`` and are swept in
    ascending cost order, so when the cap stops the count early only the
    expensive bins are missing; the second return value reports that
    truncation.  Zero bins are omitted from the result.  ``cost_ceiling``
    bounds the swept range for deliberately partial, low-cost-tail counts.
    """
    if bin_width < 1:
        raise ValueError(f"bin width must be >= 1, got {bin_width}")
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    view = as_view(net)
    base = view.net
    if order is None:
        order = build_search_order(base, trees)
    ceiling = base.max_elementary_path_cost()
    if cost_ceiling is not None:
        ceiling = min(ceiling, cost_ceiling)
    bins: dict[int, int] = {}
    total = 0
    b = origin
    while b <= ceiling:
        got, hit, more_above = _corridor_scan(view, trees, task, b,
                                              b + bin_width, order, counters,
                                              control, collect=False,
                                              cap=cap - total)
        if got:
            bins[b] = got
            total += got
        if hit:
            return bins, True
        if not more_above:
            break
        b += bin_width
    return bins, False
