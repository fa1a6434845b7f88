"""Trajectory execution and structural checks.

The robot picks up every sensor it meets that is not already at its attached
position and drops a carried sensor the moment it crosses that sensor's
attached position. A sensor whose attached position lies beyond everything the
robot will still visit is dropped at the furthest point it does visit, which
leaves surplus sensors at or after the turnaround. Drop points increase with
the sensor index, so the final placement preserves order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_EPS, Instance, Trajectory, gaps_of, trajectory_length

_UNTOUCHED, _CARRIED, _SETTLED = 0, 1, 2


@dataclass(frozen=True)
class SimulationReport:
    final_positions: tuple[float, ...]
    length: float
    max_visits: int
    terminal_visits: int
    covered: bool
    order_preserved: bool
    stranded: tuple[int, ...] = ()
    """1-based sensors still carried when the trajectory ends."""

    @property
    def infeasible(self) -> bool:
        return not self.covered


def execute_trajectory(inst: Instance, t: Trajectory, eps: float = DEFAULT_EPS) -> SimulationReport:
    xs = inst.positions
    n = inst.n
    targets = np.minimum((2 * np.arange(1, n + 1) - 1) * inst.radius, inst.length)
    final = np.array(xs, dtype=float)
    status = np.where(np.abs(xs - targets) <= eps, _SETTLED, _UNTOUCHED)
    carried: set[int] = set()

    segs = t.segments
    # furthest point the robot still reaches from the end of each segment on
    reach = np.maximum.accumulate(np.asarray(t.points[1:])[::-1])[::-1]
    drop_at = targets.copy()

    for s_idx, (a, b) in enumerate(segs):
        d = 1.0 if b > a else -1.0
        lo, hi = min(a, b) - eps, max(a, b) + eps
        first = int(np.searchsorted(xs, lo, side="left"))
        last = int(np.searchsorted(xs, hi, side="right"))
        events = []
        for j in range(first, last):
            if status[j] == _UNTOUCHED:
                events.append((d * (xs[j] - a), 0, j))
        for e in events:
            j = e[2]
            drop_at[j] = min(targets[j], reach[s_idx])
        for j in list(carried) + [e[2] for e in events]:
            if lo <= drop_at[j] <= hi:
                events.append((d * (drop_at[j] - a), 1, j))
        # pickups before drops at the same spot; drops in travel order
        events.sort(key=lambda e: (e[0], e[1], d * e[2]))
        for s, kind, j in events:
            if kind == 0:
                status[j] = _CARRIED
                carried.add(j)
            elif j in carried:
                carried.discard(j)
                status[j] = _SETTLED
                final[j] = drop_at[j]

    stranded = tuple(sorted(j + 1 for j in carried))
    max_interior, terminal = verify_three_visits(t, eps)
    return SimulationReport(
        final_positions=tuple(float(v) for v in final),
        length=trajectory_length(t),
        max_visits=max_interior,
        terminal_visits=terminal,
        covered=not gaps_of(inst.length, inst.radius, final, eps),
        order_preserved=bool(np.all(np.diff(final) >= -eps)),
        stranded=stranded,
    )


def visit_profile(t: Trajectory, eps: float = DEFAULT_EPS) -> tuple[np.ndarray, np.ndarray]:
    """Breakpoints and the number of passes over each open elementary interval."""
    pts = np.unique(np.asarray(t.points))
    counts = np.zeros(max(len(pts) - 1, 0), dtype=int)
    for a, b in t.segments:
        i = int(np.searchsorted(pts, min(a, b)))
        k = int(np.searchsorted(pts, max(a, b)))
        counts[i:k] += 1
    return pts, counts


def verify_three_visits(t: Trajectory, eps: float = DEFAULT_EPS) -> tuple[int, int]:
    """Max passes over any interior point, and visits of the terminal point."""
    if t.is_empty:
        return 1, 1
    _, counts = visit_profile(t, eps)
    p = t.terminal
    terminal = sum(1 for a, b in t.segments if min(a, b) - eps <= p <= max(a, b) + eps)
    return int(counts.max()), terminal


def verify_shape(t: Trajectory, eps: float = DEFAULT_EPS) -> bool:
    """True iff ``t`` is triples and straight runs, optionally closed by one double."""
    pts = t.points
    m = len(pts) - 1
    if m <= 1:
        return True
    lefts = pts[1:m:2]
    rights = pts[2::2]
    # each right turn stays clear of the previous retraced interval
    for i in range(1, len(rights)):
        if rights[i] < lefts[i - 1] - eps:
            return False
    # the third pass of every triple reaches its left turn again
    n_triples = (m - 1) // 2
    for i in range(n_triples):
        nxt = lefts[i + 1] if i + 1 < len(lefts) else pts[-1]
        if nxt < lefts[i] - eps:
            return False
    return True


def fully_stretched(inst: Instance, t: Trajectory, report: SimulationReport, eps: float = DEFAULT_EPS) -> bool:
    """Every moved sensor sits at its attached position, or short of it at a turnaround."""
    stops = np.asarray(t.points)
    for j, (x0, x1) in enumerate(zip(inst.positions, report.final_positions), start=1):
        if abs(x1 - x0) <= eps or abs(x1 - inst.target(j)) <= eps:
            continue
        if x1 < inst.target(j) and np.any(np.abs(stops - x1) <= eps):
            continue
        return False
    return True


def clipped_length(t: Trajectory, lo: float, hi: float) -> float:
    """Length of the part of ``t`` lying inside ``[lo, hi]``."""
    total = 0.0
    for a, b in t.segments:
        u, v = min(a, b), max(a, b)
        total += max(0.0, min(v, hi) - max(u, lo))
    return total
