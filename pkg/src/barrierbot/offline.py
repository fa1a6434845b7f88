"""Linear-time optimal offline trajectory.

An optimal trajectory is a run of triples on a prefix of the potential triple
delimiters, followed either by a straight finish at the anchor ``c`` or by a
single double whose left turn is ``c``. Each candidate is priced by its
overhead over the straight walk to ``c`` and the cheapest one is emitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_EPS, Instance, Trajectory, coverage_balances, gap_bounds


@dataclass(frozen=True)
class DelimiterList:
    """Pairs ``(b_i, a_i)`` of 1-based sensor indices.

    ``tail_b`` is the first deficit sensor after ``a_m`` (up to the anchor
    sensor), or ``None`` when every deficit run ends at a delimiter.
    """

    pairs: tuple[tuple[int, int], ...]
    tail_b: int | None = None

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.pairs)

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.pairs)


@dataclass(frozen=True)
class AnchorInfo:
    k: int
    c: float


def qualifying_mask(inst: Instance, bal: np.ndarray, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Sensors that may serve as the left turn of a triple."""
    two_r = 2 * inst.radius
    on_edge = np.abs(bal + two_r) <= eps
    collocated = np.zeros(inst.n, dtype=bool)
    collocated[:-1] = np.abs(np.diff(inst.positions)) <= eps
    inside = (bal > -two_r) & (bal < -eps) & ~on_edge
    return inside | (on_edge & collocated)


def anchor_point(inst: Instance, bal: np.ndarray, eps: float = DEFAULT_EPS) -> AnchorInfo:
    _, hi = gap_bounds(inst.length, inst.radius, inst.positions, eps, presorted=True)
    if not len(hi):
        raise ValueError("anchor point is only defined when a gap exists")
    last = float(hi[-1])
    k = min(max(1, math.ceil(last / (2 * inst.radius) - eps)), inst.n)
    # moving s_k left uncovers [2rk, x_{k+1} - r] unless s_{k+1} is in surplus
    later = np.flatnonzero(np.asarray(bal)[k:] >= -eps)
    k = k + int(later[0]) if len(later) else inst.n
    ck = float(bal[k - 1])
    xk = float(inst.positions[k - 1])
    c = xk if ck < -eps else min(xk + ck, inst.length)
    return AnchorInfo(k, c)


def potential_delimiters(
    inst: Instance,
    bal: np.ndarray,
    eps: float = DEFAULT_EPS,
    k: int | None = None,
) -> DelimiterList:
    """List of potential triple delimiters among sensors ``1..k``."""
    if k is None:
        k = inst.n
    full = np.asarray(bal)
    qual = qualifying_mask(inst, full, eps)[:k]
    bal = full[:k]
    n = len(bal)
    idx = np.arange(1, n + 1)
    a = idx[qual]
    neg = bal < -eps
    # next_neg[i] = smallest 1-based deficit index >= i + 1, or n + 1
    marks = np.where(neg, idx, n + 1)
    next_neg = np.minimum.accumulate(marks[::-1])[::-1]
    next_neg = np.append(next_neg, n + 1)
    prev_a = np.concatenate(([0], a[:-1]))
    b = next_neg[prev_a]
    pairs = tuple((int(bi), int(ai)) for bi, ai in zip(b, a))
    last_a = int(a[-1]) if len(a) else 0
    tail = int(next_neg[last_a])
    return DelimiterList(pairs, tail if tail <= n else None)


def overheads(
    inst: Instance,
    bal: np.ndarray,
    delims: DelimiterList,
    anchor: AnchorInfo,
) -> np.ndarray:
    """Overhead ``o_j`` of the trajectory with ``j`` triples, ``0 <= j <= m``."""
    x = inst.positions
    bal = np.asarray(bal)
    m = delims.m
    a = np.asarray(delims.a, dtype=int)
    b = np.asarray(delims.b, dtype=int)
    # right turn of each triple is the attached position of its first deficit sensor
    right = x[b - 1] + bal[b - 1] if m else np.empty(0)
    triple_cost = 2 * (x[a - 1] - right) if m else np.empty(0)
    prefix = np.concatenate(([0.0], np.cumsum(triple_cost)))
    double = np.empty(m + 1)
    double[:m] = anchor.c - right
    if delims.tail_b is not None:
        tb = delims.tail_b - 1
        double[m] = anchor.c - (x[tb] + bal[tb])
    else:
        double[m] = 0.0
    return prefix + double


def _emit(inst, bal, delims, anchor, j) -> Trajectory:
    x = inst.positions
    pts = [0.0]
    for b, a in delims.pairs[:j]:
        pts.append(float(x[a - 1]))
        pts.append(float(x[b - 1] + bal[b - 1]))
    if j < delims.m:
        b_next = delims.pairs[j][0]
    else:
        b_next = delims.tail_b
    pts.append(anchor.c)
    if b_next is not None:
        pts.append(float(x[b_next - 1] + bal[b_next - 1]))
    return Trajectory.from_waypoints(pts)


@dataclass(frozen=True)
class OfflineSolution:
    trajectory: Trajectory
    triples: int
    overheads: np.ndarray
    delimiters: DelimiterList
    anchor: AnchorInfo


def solve_offline_detailed(inst: Instance, eps: float = DEFAULT_EPS) -> OfflineSolution | None:
    """Optimal trajectory with its bookkeeping, or ``None`` for a covered barrier."""
    if not len(gap_bounds(inst.length, inst.radius, inst.positions, eps, presorted=True)[0]):
        return None
    bal = coverage_balances(inst)
    anchor = anchor_point(inst, bal, eps)
    delims = potential_delimiters(inst, bal, eps, k=anchor.k)
    o = overheads(inst, bal, delims, anchor)
    # smallest j among the minima: fewest triples on ties
    best = float(o.min())
    j = int(np.flatnonzero(o <= best + eps)[0])
    return OfflineSolution(_emit(inst, bal, delims, anchor, j), j, o, delims, anchor)


def solve_offline(inst: Instance, eps: float = DEFAULT_EPS) -> Trajectory:
    sol = solve_offline_detailed(inst, eps)
    return Trajectory() if sol is None else sol.trajectory
