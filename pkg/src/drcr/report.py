"""Solver outcome plus instrumentation counters."""

from __future__ import annotations

from dataclasses import dataclass, field

from .pulse import SearchCounters

OPTIMAL = "optimal"        # single-path solvers: optimum found
PAIR = "pair"              # disjoint-pair solver: pair found
INFEASIBLE = "infeasible"  # proven: no solution exists
TIMEOUT = "timeout"        # deadline or corridor cap hit before a verdict

OUTCOMES = (OPTIMAL, PAIR, INFEASIBLE, TIMEOUT)


@dataclass
class SolveReport:
    """What a solver decided and how much work it took.

    ``corridors_explored`` and ``ap_candidates_checked`` stay zero for
    single-path solvers; ``iterations`` counts bound-schedule probes and
    stays zero for the corridor solver.  ``wall_time`` is seconds inside the
    solver (preprocessing excluded; the benchmark harness times that
    separately).
    """

    outcome: str
    wall_time: float = 0.0
    corridors_explored: int = 0
    ap_candidates_checked: int = 0
    iterations: int = 0
    counters: SearchCounters = field(default_factory=SearchCounters)

    @property
    def pulses(self) -> int:
        return self.counters.pulses
