"""Single-path solving via iteratively raised artificial cost bounds.

The plain optimal pulse search starts with an infinite incumbent, so the
cost pruning is idle until the first feasible path turns up -- usually a
path far up the cost distribution.  These schedules instead run the search
under a deliberately tight artificial bound derived from the unconstrained
shortest cost, doubling their way up on failure.  Failed probes scan the
nearly empty left tail of the distribution and are cheap; the first
successful probe returns the exact optimum, because a probe at bound B is
exhaustive over all paths cheaper than B.

Two schedules:

* doubling-bound: probe 2*shortest, 4*shortest, 8*shortest, ...
* doubling-step:  probe shortest + f, + 3f, + 7f, ... with the step f
  picked from the edge costs (default: twice the cheapest edge).

No elementary path can cost more than node_count * max_edge_cost, so once
the bound passes that, one final unbounded probe settles infeasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from time import perf_counter

from .network import Network, Path, DrcrTask
from .pulse import (INF, SearchControl, SearchCounters, SearchOrder,
                    SearchTimeout, build_search_order, pulse_optimal)
from .report import INFEASIBLE, OPTIMAL, TIMEOUT, SolveReport
from .trees import ReverseTrees

DOUBLING_BOUND = "doubling-bound"
DOUBLING_STEP = "doubling-step"

STEP_BASES = ("min-edge-cost", "double-min-edge-cost", "mean-edge-cost")


@dataclass(frozen=True)
class BtbuConfig:
    """Bound schedule selection.

    ``step_basis`` picks f(G) for the doubling-step schedule: one of the
    STEP_BASES names or an explicit positive integer.
    """

    strategy: str = DOUBLING_BOUND
    step_basis: str | int = "double-min-edge-cost"

    def __post_init__(self):
        if self.strategy not in (DOUBLING_BOUND, DOUBLING_STEP):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if isinstance(self.step_basis, int):
            if self.step_basis < 1:
                raise ValueError("explicit cost step must be >= 1")
        elif self.step_basis not in STEP_BASES:
            raise ValueError(f"unknown step basis {self.step_basis!r}")


BTBU1 = BtbuConfig(strategy=DOUBLING_BOUND)
BTBU2 = BtbuConfig(strategy=DOUBLING_STEP)


def cost_step(net: Network, basis: str | int) -> int:
    """Resolve a step basis against a network's edge costs."""
    if isinstance(basis, int):
        return basis
    if net.min_edge_cost is None:
        raise ValueError("network has no edges")
    if basis == "min-edge-cost":
        return net.min_edge_cost
    if basis == "double-min-edge-cost":
        return 2 * net.min_edge_cost
    if basis == "mean-edge-cost":
        return ceil(sum(e.cost for e in net.edges) / len(net.edges))
    raise ValueError(f"unknown step basis {basis!r}")


def solve_btbu(net: Network, trees: ReverseTrees, task: DrcrTask,
               cfg: BtbuConfig = BTBU1, *, order: SearchOrder | None = None,
               control: SearchControl | None = None) -> tuple[Path | None, SolveReport]:
    """Exact optimum for the task via the configured bound schedule."""
    start = perf_counter()
    counters = SearchCounters()
    report = SolveReport(INFEASIBLE, counters=counters)
    shortest = trees.min_cost_to_target[task.source]
    if shortest == INF:
        report.wall_time = perf_counter() - start
        return None, report
    if order is None:
        order = build_search_order(net, trees)

    guard = net.max_elementary_path_cost()
    path: Path | None = None
    try:
        if cfg.strategy == DOUBLING_BOUND:
            bound = shortest
            while path is None:
                bound *= 2
                if bound > guard:
                    break
                report.iterations += 1
                path = pulse_optimal(net, trees, task, bound, order=order,
                                     counters=counters, control=control)
        else:
            step = cost_step(net, cfg.step_basis)
            bound = shortest + step
            while path is None and bound <= guard:
                report.iterations += 1
                path = pulse_optimal(net, trees, task, bound, order=order,
                                     counters=counters, control=control)
                step *= 2
                bound += step
        if path is None:
            # bound passed the elementary-path cost ceiling: settle exactly
            report.iterations += 1
            path = pulse_optimal(net, trees, task, INF, order=order,
                                 counters=counters, control=control)
    except SearchTimeout:
        report.outcome = TIMEOUT
        report.wall_time = perf_counter() - start
        return None, report

    report.outcome = OPTIMAL if path is not None else INFEASIBLE
    report.wall_time = perf_counter() - start
    return path, report
