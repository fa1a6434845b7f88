"""Problem data model: instances, gaps, coverage balances and trajectories."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DEFAULT_EPS = 1e-9


class InstanceError(ValueError):
    """Raised when a candidate instance violates the sensor model."""


class NonPositiveRange(InstanceError):
    pass


class InfeasibleCoverage(InstanceError):
    pass


class PositionOutOfRange(InstanceError):
    pass


class TrajectoryError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Instance:
    """Sensors of identical range ``radius`` on the barrier ``[0, length]``.

    ``positions`` is a sorted, read-only float array. Build instances through
    :func:`validate_instance` rather than calling the constructor directly.
    """

    length: float
    radius: float
    positions: np.ndarray

    @property
    def n(self) -> int:
        return len(self.positions)

    def target(self, j: int) -> float:
        """Attached position of the 1-based sensor ``j``, clamped to the barrier."""
        return min((2 * j - 1) * self.radius, self.length)

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "range": self.radius,
            "positions": [float(x) for x in self.positions],
        }

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.length == other.length
            and self.radius == other.radius
            and np.array_equal(self.positions, other.positions)
        )

    def __hash__(self):
        return hash((self.length, self.radius, self.positions.tobytes()))

    def __repr__(self):
        return f"Instance(length={self.length}, radius={self.radius}, n={self.n})"


def validate_instance(
    length: float,
    radius: float,
    positions: Iterable[float],
    eps: float = DEFAULT_EPS,
) -> Instance:
    length = float(length)
    radius = float(radius)
    if not length > 0:
        raise InstanceError(f"barrier length must be positive, got {length}")
    if not radius > 0:
        raise NonPositiveRange(f"sensor range must be positive, got {radius}")
    xs = np.sort(np.asarray(list(positions), dtype=float))
    if xs.size == 0:
        raise InstanceError("at least one sensor is required")
    if not np.all(np.isfinite(xs)):
        raise PositionOutOfRange("sensor positions must be finite")
    if xs[0] < -eps or xs[-1] > length + eps:
        raise PositionOutOfRange(
            f"sensor positions must lie in [0, {length}], got [{xs[0]}, {xs[-1]}]"
        )
    xs = np.clip(xs, 0.0, length)
    if 2 * radius * xs.size < length - eps:
        raise InfeasibleCoverage(
            f"{xs.size} sensors of range {radius} cannot cover length {length}"
        )
    xs.flags.writeable = False
    return Instance(length, radius, xs)


_FIELDS = {"length", "range", "positions"}


def instance_from_dict(data: dict, eps: float = DEFAULT_EPS) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("instance document must be an object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise InstanceError(f"unknown instance fields: {sorted(unknown)}")
    missing = _FIELDS - set(data)
    if missing:
        raise InstanceError(f"missing instance fields: {sorted(missing)}")
    if not isinstance(data["positions"], list):
        raise InstanceError("positions must be an array of numbers")
    return validate_instance(data["length"], data["range"], data["positions"], eps)


def load_instance(path: str | Path, eps: float = DEFAULT_EPS) -> Instance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh), eps)


def dump_instance(inst: Instance, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(inst.to_dict(), fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class Gap:
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


def gap_bounds(
    length: float,
    radius: float,
    positions: Sequence[float],
    eps: float = DEFAULT_EPS,
    presorted: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Left and right ends of every gap, as two arrays."""
    xs = np.asarray(positions, dtype=float)
    if not presorted:
        xs = np.sort(xs)
    # sorted centres make x_{i-1} + r the running coverage edge before sensor i
    lo = np.clip(np.concatenate(([0.0], xs + radius)), 0.0, length)
    hi = np.clip(np.concatenate((xs - radius, [length])), 0.0, length)
    keep = hi - lo > eps
    return lo[keep], hi[keep]


def gaps_of(length: float, radius: float, positions: Sequence[float], eps: float = DEFAULT_EPS) -> list[Gap]:
    """Uncovered subintervals of ``[0, length]`` for sensors at ``positions``."""
    lo, hi = gap_bounds(length, radius, positions, eps)
    return [Gap(a, b) for a, b in zip(lo.tolist(), hi.tolist())]


def compute_gaps(inst: Instance, eps: float = DEFAULT_EPS) -> list[Gap]:
    return gaps_of(inst.length, inst.radius, inst.positions, eps)


def coverage_balances(inst: Instance) -> np.ndarray:
    """Balance ``(2ri - r) - x_i`` of every sensor, 1-based ``i``."""
    i = np.arange(1, inst.n + 1, dtype=float)
    return (2 * i - 1) * inst.radius - inst.positions


def is_negative(balance: float, eps: float = DEFAULT_EPS) -> bool:
    return balance < -eps


@dataclass(frozen=True)
class Trajectory:
    """Robot path ``[t_0, t_1, ..., t_m]``; odd points are left turns."""

    points: tuple[float, ...] = (0.0,)

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if not pts:
            raise TrajectoryError("a trajectory needs a start point")
        object.__setattr__(self, "points", pts)
        for i in range(1, len(pts)):
            going_right = i % 2 == 1
            if going_right and not pts[i] > pts[i - 1]:
                raise TrajectoryError(f"point {i} must lie right of point {i - 1}: {pts}")
            if not going_right and not pts[i] < pts[i - 1]:
                raise TrajectoryError(f"point {i} must lie left of point {i - 1}: {pts}")

    @classmethod
    def from_waypoints(cls, waypoints: Iterable[float], eps: float = DEFAULT_EPS) -> "Trajectory":
        """Build a trajectory from a raw path, merging repeats and collinear runs."""
        pts: list[float] = []
        for w in waypoints:
            w = float(w)
            if pts and abs(w - pts[-1]) <= eps:
                continue
            if len(pts) >= 2 and (pts[-1] - pts[-2]) * (w - pts[-1]) > 0:
                pts[-1] = w
                continue
            pts.append(w)
        if not pts:
            pts = [0.0]
        if len(pts) >= 2 and pts[1] < pts[0]:
            raise TrajectoryError("the robot must start by moving right")
        return cls(tuple(pts))

    @property
    def start(self) -> float:
        return self.points[0]

    @property
    def turns(self) -> tuple[float, ...]:
        return self.points[1:-1]

    @property
    def terminal(self) -> float:
        return self.points[-1]

    @property
    def is_empty(self) -> bool:
        return len(self.points) == 1

    @property
    def left_turns(self) -> tuple[float, ...]:
        return self.points[1:-1:2]

    @property
    def segments(self) -> list[tuple[float, float]]:
        return list(zip(self.points, self.points[1:]))

    @property
    def length(self) -> float:
        return trajectory_length(self)

    def within(self, length: float, eps: float = DEFAULT_EPS) -> bool:
        return all(-eps <= p <= length + eps for p in self.points)


def trajectory_length(t: Trajectory) -> float:
    return float(sum(abs(b - a) for a, b in t.segments))
