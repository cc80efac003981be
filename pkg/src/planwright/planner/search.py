"""Heuristic forward search over ground tasks.

A* expands by ascending f-value with FIFO tie-breaking among equal
f-values, so the outcome for a fixed (task, config) pair is deterministic
byte for byte. `unsolvable` is only reported once the reachable state space
is exhausted; hitting the node or time budget reports `budget-exhausted`
instead.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Optional

from .grounding import GroundTask
from .heuristics import INF, blind, h_add
from .plan import Plan, PlanStep

STATUS_PLAN = "plan"
STATUS_UNSOLVABLE = "unsolvable"
STATUS_BUDGET = "budget-exhausted"


@dataclass(frozen=True)
class SolveConfig:
    strategy: str = "astar"  # astar | greedy
    heuristic: str = "blind"  # h_add | blind
    node_budget: int = 1_000_000
    time_budget: float = 60.0

    def __post_init__(self) -> None:
        if self.strategy not in ("astar", "greedy"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.heuristic not in ("h_add", "blind"):
            raise ValueError(f"unknown heuristic {self.heuristic!r}")
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class SolveResult:
    status: str
    plan: Optional[Plan] = None
    nodes_expanded: int = 0
    wall_time: float = field(default=0.0, repr=False)

    def to_json(self) -> dict:
        # Wall time is real-time measurement and deliberately excluded so
        # equal solves serialize identically; it travels in run manifests.
        out = {"status": self.status, "nodes_expanded": self.nodes_expanded}
        if self.plan is not None:
            out["plan"] = self.plan.to_json()
        return out


def solve(task: GroundTask, cfg: SolveConfig = SolveConfig()) -> SolveResult:
    started = time.monotonic()
    estimate = h_add if cfg.heuristic == "h_add" else blind

    init_key = (task.init_bools, task.init_nums)
    if task.goal_holds(*init_key):
        return SolveResult(STATUS_PLAN, Plan(()), 0, time.monotonic() - started)

    h0 = estimate(task, *init_key)
    if h0 == INF:
        return SolveResult(STATUS_UNSOLVABLE, None, 0, time.monotonic() - started)

    counter = 0
    open_heap: list[tuple[float, int, int, tuple]] = []
    heapq.heappush(open_heap, (h0 if cfg.strategy == "greedy" else h0, counter, 0, init_key))
    best_g: dict[tuple, int] = {init_key: 0}
    parents: dict[tuple, tuple[tuple, int]] = {}
    expanded = 0

    while open_heap:
        _, _, g, state = heapq.heappop(open_heap)
        if g > best_g.get(state, -1):
            continue  # stale entry
        if task.goal_holds(*state):
            return SolveResult(STATUS_PLAN, _reconstruct(task, parents, state), expanded, time.monotonic() - started)
        if expanded >= cfg.node_budget or time.monotonic() - started > cfg.time_budget:
            return SolveResult(STATUS_BUDGET, None, expanded, time.monotonic() - started)
        expanded += 1
        bools, nums = state
        for action_idx, action in enumerate(task.actions):
            if not action.applicable(bools, nums):
                continue
            successor = action.apply(bools, nums)
            new_g = g + 1
            known = best_g.get(successor)
            if known is not None and known <= new_g:
                continue
            best_g[successor] = new_g
            parents[successor] = (state, action_idx)
            h = estimate(task, *successor)
            if h == INF:
                continue
            f = h if cfg.strategy == "greedy" else new_g + h
            counter += 1
            heapq.heappush(open_heap, (f, counter, new_g, successor))

    return SolveResult(STATUS_UNSOLVABLE, None, expanded, time.monotonic() - started)


def _reconstruct(task: GroundTask, parents, state) -> Plan:
    steps: list[PlanStep] = []
    while state in parents:
        state, action_idx = parents[state]
        action = task.actions[action_idx]
        steps.append(PlanStep(action.name, action.args))
    steps.reverse()
    return Plan(tuple(steps))
