"""Lower-bound constructions and random instance generation.

The two adaptive adversaries are :class:`OnlineEnvironment` providers: they
decide where sensors go only when the robot is about to look, so the lower
bounds are exercised against the real online algorithms. Every decision
concerns positions strictly beyond the frontier, and nothing revealed is ever
withdrawn.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import DEFAULT_EPS, Instance, InfeasibleCoverage, InstanceError, validate_instance
from .offline import solve_offline
from .online import OnlineEnvironment, OnlineRun


class DegenerateLength(InstanceError):
    """The barrier is too short for the requested construction."""


@dataclass(frozen=True)
class AdversaryConfig:
    length: float = 0.0
    """Barrier length; 0 selects the unknown-length construction."""
    radius: float = 1.0
    stack: int = 1
    delta: float | None = None
    seed: int = 0


class _LazyAdversary(OnlineEnvironment):
    """Shared plumbing: a queue of decided but unrevealed positions."""

    def __init__(self, radius: float, hide_length: bool, eps: float):
        super().__init__(radius, hide_length, eps)
        self._plan: deque[float] = deque()
        self._finished = False

    def _decide(self, upto: float) -> bool:
        """Extend the plan; return False to leave ``(frontier, upto]`` empty for now."""
        raise NotImplementedError

    def _next_sensor(self, upto: float) -> float | None:
        if not self._plan and not self._finished and upto > self.frontier + self.eps:
            self._decide(upto)
        if self._plan and self._plan[0] <= upto:
            return self._plan[0]
        return None

    def _taken(self, p: float) -> None:
        self._plan.popleft()

    @property
    def _edge(self) -> float:
        """Coverage edge if every sensor decided so far sat attached."""
        return 2 * self.radius * (len(self._committed) + len(self._plan))

    def _top_up(self, at: float) -> None:
        """Just enough sensors at ``at`` to make the barrier coverable."""
        L = self._barrier_length()
        need = max(1, math.ceil((L - self._edge) / (2 * self.radius) - self.eps))
        self._plan.extend([at] * need)
        self._finished = True

    def instance(self) -> Instance:
        return validate_instance(self._barrier_length(), self.radius, list(self._committed) + list(self._plan), self.eps)


class KnownLengthAdversary(_LazyAdversary):
    """Gap-then-stack blocks for as long as the robot answers each with a triple.

    Each block is an empty stretch of ``2r(k-1)`` followed by ``k`` collocated
    sensors that exactly cover it. Once the robot walks past a stack without
    turning, the rest of the barrier gets attached sensors and a final top-up
    that leaves the point ``L`` uncovered.
    """

    def __init__(self, length: float, radius: float | None = None, stack: int | None = None, eps: float = DEFAULT_EPS):
        root = length ** (1 / 3)
        radius = root if radius is None else radius
        stack = max(1, round(root)) if stack is None else stack
        if 2 * (2 * radius * stack) > length - 2 * radius:
            raise DegenerateLength(f"length {length} fits fewer than two blocks of {stack} sensors of range {radius}")
        super().__init__(radius, hide_length=False, eps=eps)
        self._L = float(length)
        self.stack = stack
        self._stack_at: float | None = None
        self._turned = False
        self._attached = False
        self.blocks = 0

    def _barrier_length(self) -> float:
        return self._L

    def _on_left_turn(self, at: float) -> None:
        if self._stack_at is not None and at >= self._stack_at - self.eps:
            self._turned = True

    def _decide(self, upto: float) -> bool:
        r, L, k = self.radius, self._L, self.stack
        edge = self._edge
        if not self._attached and self._stack_at is not None and not self._turned:
            self._attached = True
        if self._attached:
            p = edge + r
            if p + r < L - r / 2:
                self._plan.append(p)
            else:
                self._top_up((self.frontier + L - r) / 2)
            return True
        if edge + 2 * r * k <= L - 2 * r:
            self._stack_at = edge + (2 * k - 1) * r
            self._turned = False
            self._plan.extend([self._stack_at] * k)
            self.blocks += 1
            return True
        # last block, shortened to fit, plus one sensor that pushes the robot to L - r
        short = math.ceil((L - edge) / (2 * r) - self.eps) - 1
        if short >= 1:
            self._top_up(edge + (2 * short - 1) * r)
        else:
            self._top_up((self.frontier + L - r) / 2)
        return True


class UnknownLengthAdversary(_LazyAdversary):
    """Stack of ``i`` sensors, then attached sensors until the robot turns.

    The barrier ends ``r + delta`` past the robot's first left turn, or at six
    times the stack position if it never turns.
    """

    def __init__(self, count: int, radius: float = 1.0, delta: float | None = None, eps: float = DEFAULT_EPS):
        if count < 1:
            raise InstanceError("the stack needs at least one sensor")
        super().__init__(radius, hide_length=True, eps=eps)
        self.delta = radius / 10 if delta is None else float(delta)
        # the last stacked sensor sits exactly at its attached position
        self.stack_at = (2 * count - 1) * radius
        self._L: float | None = None
        self._plan.extend([self.stack_at] * count)

    def _barrier_length(self) -> float | None:
        return self._L

    def _end_here(self, length: float) -> None:
        self._L = length
        self._plan.clear()
        self._top_up((self.frontier + length - self.radius) / 2)

    def _on_left_turn(self, at: float) -> None:
        if self._L is None:
            self._end_here(at + self.radius + self.delta)

    def _decide(self, upto: float) -> bool:
        r = self.radius
        p = self._edge + r
        if p + r >= 6 * self.stack_at - r:
            self._end_here(6 * self.stack_at)
        else:
            self._plan.append(p)
        return True


def _ratio(env: OnlineEnvironment, run: OnlineRun) -> tuple[Instance, float]:
    inst = env.instance()
    return inst, run.length / solve_offline(inst, env.eps).length


def adversary_known_L(
    length: float,
    algo: Callable[[OnlineEnvironment], OnlineRun],
    radius: float | None = None,
    stack: int | None = None,
    eps: float = DEFAULT_EPS,
) -> tuple[Instance, float]:
    env = KnownLengthAdversary(length, radius, stack, eps)
    return _ratio(env, algo(env))


def adversary_unknown_L(
    count: int,
    radius: float,
    delta: float | None,
    algo: Callable[[OnlineEnvironment], OnlineRun],
    eps: float = DEFAULT_EPS,
) -> tuple[Instance, float]:
    env = UnknownLengthAdversary(count, radius, delta, eps)
    return _ratio(env, algo(env))


def _attached_run(start: float, length: float, radius: float) -> list[float]:
    """Attached positions from ``start`` while the point ``length`` stays uncovered."""
    out = []
    p = start
    while p + radius < length - radius / 2:
        out.append(p)
        p += 2 * radius
    return out


def adversary_fixed_switch(z: float, length: float, radius: float, eps: float = DEFAULT_EPS) -> Instance:
    """Static instance that punishes a robot with switching point ``z``."""
    L, r = float(length), float(radius)
    if not 0 <= z <= L:
        raise InstanceError(f"switching point {z} outside [0, {L}]")
    if L < 8 * r:
        raise DegenerateLength(f"length {L} too short for range {r}")
    if z <= 2 * L / 3 + eps:
        k = math.floor((z + r) / (2 * r))
        xs = [(2 * j - 1) * r for j in range(1, k + 1)]
        xs.append(2 * k * r + 1.5 * r)
        xs += _attached_run(2 * k * r + 3 * r, L, r)
    else:
        k = math.ceil(z / (2 * r) - eps)
        tail = _attached_run(2 * k * r + 3 * r, L, r)
        if not tail:
            # no room for a second gap after z: one stack near the end
            n = math.ceil(L / (2 * r) - eps)
            return validate_instance(L, r, [min(z, L - 1.5 * r)] * n, eps)
        xs = [float(z)] * k + [2 * k * r + 1.5 * r] + tail
    need = math.ceil(L / (2 * r) - eps) - len(xs)
    xs += [xs[-1]] * max(need, 1)
    return validate_instance(L, r, xs, eps)


MODES = ("uniform", "clustered", "stacked", "grid")


def gen_random_instance(
    n: int,
    length: float,
    radius: float,
    seed: int,
    require_end_gap: bool = True,
    mode: str | None = None,
    eps: float = DEFAULT_EPS,
) -> Instance:
    """Reproducible random instance; with ``require_end_gap`` the point ``length`` stays uncovered."""
    L, r = float(length), float(radius)
    if r <= 0:
        validate_instance(L, r, [0.0] * max(n, 1), eps)
    if 2 * r * n < L - eps:
        raise InfeasibleCoverage(f"{n} sensors of range {r} cannot cover length {L}")
    rng = np.random.default_rng(seed)
    if mode is None:
        mode = MODES[int(rng.integers(len(MODES)))]
    hi = L
    if require_end_gap:
        margin = max(1e-6 * r, 100 * eps)
        hi = L - r - margin
        if hi < 0:
            raise DegenerateLength(f"range {r} covers the end of a barrier of length {L} from anywhere")
    if mode == "uniform":
        xs = rng.uniform(0.0, hi, n)
    elif mode == "clustered":
        centres = rng.uniform(0.0, hi, int(rng.integers(1, max(2, n // 3) + 1)))
        xs = rng.choice(centres, n) + rng.normal(0.0, r / 2, n)
    elif mode == "stacked":
        xs = rng.choice(rng.uniform(0.0, hi, int(rng.integers(1, max(2, n // 2) + 1))), n)
    elif mode == "grid":
        # half-range lattice: many balances land exactly on the qualifying boundaries
        xs = np.floor(rng.uniform(0.0, hi, n) / (r / 2)) * (r / 2)
    else:
        raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")
    return validate_instance(L, r, np.clip(xs, 0.0, hi), eps)
