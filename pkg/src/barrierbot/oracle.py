"""Exhaustive optimal solver for small instances.

Every subset of sensors is tried as the set of triple left turns and every
sensor from the last gap onward is tried as the anchor of the finish. Each
right turn is the attached position of the first deficit sensor it must serve,
and the path closes either straight at the anchor or with a double. Candidates
are checked by simulation only, so none of the fast solver's pruning is trusted.
"""

from __future__ import annotations

import itertools
import math

from .core import DEFAULT_EPS, Instance, Trajectory, TrajectoryError, gaps_of
from .sim import execute_trajectory


class TooLarge(ValueError):
    pass


def _candidates(inst: Instance, eps: float):
    r = inst.radius
    xs = [float(v) for v in inst.positions]
    n = inst.n
    target = [min((2 * j - 1) * r, inst.length) for j in range(1, n + 1)]
    deficit = [(2 * j - 1) * r - xs[j - 1] < -eps for j in range(1, n + 1)]
    last_hi = gaps_of(inst.length, r, xs, eps)[-1].hi
    k0 = 1
    while 2 * r * k0 < last_hi - eps and k0 < n:
        k0 += 1

    def first_deficit(lo: int, hi: int):
        for j in range(lo, hi + 1):
            if deficit[j - 1]:
                return j
        return None

    for size in range(0, n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            pts = [0.0]
            prev = 0
            for s in subset:
                b = first_deficit(prev + 1, s)
                if b is None:
                    break
                pts += [xs[s - 1], target[b - 1]]
                prev = s
            else:
                for k in range(max(k0, prev), n + 1):
                    c = max(xs[k - 1], target[k - 1])
                    yield size, pts + [c]
                    b = first_deficit(prev + 1, k)
                    if b is not None:
                        yield size, pts + [c, target[b - 1]]


def brute_force_optimal(
    inst: Instance,
    max_n: int = 12,
    eps: float = DEFAULT_EPS,
) -> tuple[Trajectory, float]:
    """Shortest covering trajectory among all triple/double layouts."""
    if inst.n > max_n:
        raise TooLarge(f"oracle limited to {max_n} sensors, instance has {inst.n}")
    if not gaps_of(inst.length, inst.radius, inst.positions, eps):
        return Trajectory(), 0.0
    pool = []
    for triples, pts in _candidates(inst, eps):
        try:
            t = Trajectory.from_waypoints(pts, eps)
        except TrajectoryError:
            continue
        pool.append((t.length, triples, len(pool), t))
    pool.sort(key=lambda c: (c[0], c[1], c[2]))
    for i, (length, triples, _, t) in enumerate(pool):
        if not execute_trajectory(inst, t, eps).covered:
            continue
        # among near-equal lengths prefer the fewest triples
        for length2, triples2, _, t2 in pool[i + 1:]:
            if length2 > length + eps:
                break
            if triples2 < triples and execute_trajectory(inst, t2, eps).covered:
                t, triples = t2, triples2
        return t, t.length
    return Trajectory(), math.inf
