"""Benchmark harness: timed solver suites and the metric tables.

Each task is timed end to end, file I/O excluded but preprocessing (the
reverse trees) included -- per-task cost would be misstated otherwise, so
the tree cache is deliberately not used here.  Deadlines are enforced
cooperatively inside the engines.  With repetitions > 1 the minimum wall
time per task is kept, which suppresses scheduler noise; threshold counts
("solved under N ms") use strict less-than.  Both protocol choices are
recorded in the output metadata.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import asdict, dataclass
from time import perf_counter
from typing import IO, Iterable, Sequence

from .btbu import BTBU1, BTBU2, BtbuConfig, solve_btbu
from .btcs import BtcsConfig, solve_btcs
from .network import Network, SrlgTask, Task
from .pulse import SearchControl, SearchCounters, SearchTimeout, pulse_optimal
from .report import INFEASIBLE, OPTIMAL, PAIR, TIMEOUT, SolveReport
from .trees import build_reverse_trees

SOLVERS = ("pulse", "btbu1", "btbu2", "btcs")
ERROR = "error"
THRESHOLDS_MS = (20.0, 50.0)
FEASIBLE_OUTCOMES = (OPTIMAL, PAIR)
RESOLVED_OUTCOMES = (OPTIMAL, PAIR, INFEASIBLE)


@dataclass
class BenchRecord:
    """One timed solve of one task."""

    task_id: int
    solver: str
    outcome: str
    wall_time_us: int
    pulses: int = 0
    corridors_explored: int = 0
    ap_candidates_checked: int = 0
    ap_cost: int | None = None

    @property
    def wall_time_ms(self) -> float:
        return self.wall_time_us / 1000.0


def _solve_once(net: Network, task: Task, solver: str,
                control: SearchControl | None, alpha: float, workers: int
                ) -> tuple[str, SolveReport | None, int | None]:
    trees = build_reverse_trees(net, task.target)
    if solver == "btcs":
        if not isinstance(task, SrlgTask):
            raise ValueError(f"btcs needs disjoint-pair tasks, got {task!r}")
        pair, report = solve_btcs(net, trees, task,
                                  BtcsConfig(alpha=alpha, workers=workers),
                                  control=control)
        return report.outcome, report, pair.ap.total_cost if pair else None
    if isinstance(task, SrlgTask):
        raise ValueError(f"solver {solver!r} needs single-path tasks, got {task!r}")
    if solver == "pulse":
        counters = SearchCounters()
        try:
            path = pulse_optimal(net, trees, task, counters=counters,
                                 control=control)
        except SearchTimeout:
            return TIMEOUT, SolveReport(TIMEOUT, counters=counters), None
        outcome = OPTIMAL if path is not None else INFEASIBLE
        return outcome, SolveReport(outcome, counters=counters), \
            path.total_cost if path else None
    cfg: BtbuConfig = BTBU1 if solver == "btbu1" else BTBU2
    path, report = solve_btbu(net, trees, task, cfg, control=control)
    return report.outcome, report, path.total_cost if path else None


def run_suite(net: Network, tasks: Sequence[Task], solver: str, *,
              time_limit_ms: float | None = None, repetitions: int = 1,
              alpha: float = 10.0, workers: int = 1) -> list[BenchRecord]:
    """Time every task under one solver; repetitions keep the fastest run.

    A solver crash on a task is recorded with outcome ``error`` and never
    aborts the suite.
    """
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    records = []
    for task_id, task in enumerate(tasks):
        best = None
        for _ in range(repetitions):
            control = SearchControl.from_time_limit_ms(time_limit_ms)
            t0 = perf_counter()
            try:
                outcome, report, ap_cost = _solve_once(
                    net, task, solver, control, alpha, workers)
            except Exception:
                outcome, report, ap_cost = ERROR, None, None
            elapsed_us = int((perf_counter() - t0) * 1e6)
            if best is None or elapsed_us < best.wall_time_us:
                best = BenchRecord(
                    task_id=task_id, solver=solver, outcome=outcome,
                    wall_time_us=elapsed_us,
                    pulses=report.pulses if report else 0,
                    corridors_explored=report.corridors_explored if report else 0,
                    ap_candidates_checked=report.ap_candidates_checked if report else 0,
                    ap_cost=ap_cost)
        records.append(best)
    return records


@dataclass
class SolverSummary:
    solver: str
    tasks: int
    resolved: int
    feasible_found: int
    max_ms: float
    mean_ms: float
    median_ms: float
    solved_under_ms: dict[float, int]
    feasible_under_ms: dict[float, int]


def summarize(records: Iterable[BenchRecord],
              thresholds_ms: Sequence[float] = THRESHOLDS_MS) -> list[SolverSummary]:
    """Per-solver metric rows; a pure function of the records."""
    by_solver: dict[str, list[BenchRecord]] = {}
    for r in records:
        by_solver.setdefault(r.solver, []).append(r)
    rows = []
    for solver in sorted(by_solver):
        rs = by_solver[solver]
        times = [r.wall_time_ms for r in rs]
        feasible = [r for r in rs if r.outcome in FEASIBLE_OUTCOMES]
        resolved = [r for r in rs if r.outcome in RESOLVED_OUTCOMES]
        rows.append(SolverSummary(
            solver=solver,
            tasks=len(rs),
            resolved=len(resolved),
            feasible_found=len(feasible),
            max_ms=max(times) if times else 0.0,
            mean_ms=statistics.fmean(times) if times else 0.0,
            median_ms=statistics.median(times) if times else 0.0,
            solved_under_ms={t: sum(1 for r in resolved if r.wall_time_ms < t)
                             for t in thresholds_ms},
            feasible_under_ms={t: sum(1 for r in feasible if r.wall_time_ms < t)
                               for t in thresholds_ms},
        ))
    return rows


def _meta_lines(meta: dict | None) -> list[str]:
    if not meta:
        return []
    return [f"# {key}={meta[key]}" for key in sorted(meta)]


def write_records_jsonl(records: Iterable[BenchRecord], f: IO[str],
                        meta: dict | None = None) -> None:
    for line in _meta_lines(meta):
        f.write(line + "\n")
    for r in records:
        f.write(json.dumps(asdict(r), sort_keys=True) + "\n")


def read_records_jsonl(f: IO[str]) -> list[BenchRecord]:
    records = []
    for line in f:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        records.append(BenchRecord(**json.loads(line)))
    return records


def write_summary_csv(rows: Sequence[SolverSummary], f: IO[str],
                      meta: dict | None = None) -> None:
    for line in _meta_lines(meta):
        f.write(line + "\n")
    if not rows:
        return
    thresholds = list(rows[0].solved_under_ms)
    header = ["solver", "tasks", "resolved", "feasible_found",
              "max_ms", "mean_ms", "median_ms"]
    header += [f"solved_under_{_fmt_thr(t)}ms" for t in thresholds]
    header += [f"feasible_under_{_fmt_thr(t)}ms" for t in thresholds]
    f.write(",".join(header) + "\n")
    for row in rows:
        cells = [row.solver, row.tasks, row.resolved, row.feasible_found,
                 f"{row.max_ms:.3f}", f"{row.mean_ms:.3f}", f"{row.median_ms:.3f}"]
        cells += [row.solved_under_ms[t] for t in thresholds]
        cells += [row.feasible_under_ms[t] for t in thresholds]
        f.write(",".join(str(c) for c in cells) + "\n")


def _fmt_thr(t: float) -> str:
    return f"{t:g}"


def write_summary_text(rows: Sequence[SolverSummary], f: IO[str],
                       meta: dict | None = None) -> None:
    for line in _meta_lines(meta):
        f.write(line + "\n")
    if not rows:
        f.write("(no records)\n")
        return
    thresholds = list(rows[0].solved_under_ms)
    columns = ["solver", "tasks", "resolved", "feasible", "max ms",
               "mean ms", "median ms"]
    columns += [f"<{_fmt_thr(t)}ms" for t in thresholds]
    columns += [f"feas<{_fmt_thr(t)}ms" for t in thresholds]
    table = [columns]
    for row in rows:
        cells = [row.solver, str(row.tasks), str(row.resolved),
                 str(row.feasible_found), f"{row.max_ms:.2f}",
                 f"{row.mean_ms:.2f}", f"{row.median_ms:.2f}"]
        cells += [str(row.solved_under_ms[t]) for t in thresholds]
        cells += [str(row.feasible_under_ms[t]) for t in thresholds]
        table.append(cells)
    widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
    for r in table:
        f.write("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n")


def sweep_alpha(net: Network, tasks: Sequence[Task],
                alphas: Sequence[float], *, time_limit_ms: float | None = None,
                workers: int = 1, repetitions: int = 1
                ) -> dict[float, list[BenchRecord]]:
    """Corridor-width sweep: one btcs suite per alpha value."""
    return {alpha: run_suite(net, tasks, "btcs", time_limit_ms=time_limit_ms,
                             repetitions=repetitions, alpha=alpha,
                             workers=workers)
            for alpha in alphas}
