"""Online robots that discover sensors only by walking over them.

An :class:`OnlineEnvironment` owns the robot's position and decides what the
robot may see: nothing beyond the furthest point visited (the frontier). The
algorithms here reason only through that interface, so the same code runs
against a fixed hidden instance or against an adversary that places sensors in
reaction to the robot's moves.

All three algorithms share the walk primitives. ``walk_in_surplus`` settles
sensors in attached positions until the next sensor is in deficit and returns
the potential right turn; ``walk_in_deficit`` collects deficit sensors up to
the next potential left turn. At each left turn the algorithm either runs a
triple back to the right turn or commits to the final double.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .core import DEFAULT_EPS, Instance, Trajectory


class RevelationError(RuntimeError):
    """An algorithm asked about a sensor the robot has not reached yet."""


class EndOfBarrier(Exception):
    """The robot reached the barrier end while looking for a left turn."""


class UnknownLength(RuntimeError):
    pass


class OnlineEnvironment:
    """Robot position plus the sensors revealed so far.

    Subclasses supply :meth:`_next_sensor` and :meth:`_barrier_length`.
    """

    def __init__(self, radius: float, hide_length: bool = False, eps: float = DEFAULT_EPS):
        self.radius = float(radius)
        self.hide_length = hide_length
        self.eps = eps
        self.position = 0.0
        self.frontier = 0.0
        self.odometer = 0.0
        self.waypoints: list[float] = [0.0]
        self._committed: list[float] = []
        self._heading = 1

    # provider hooks
    def _next_sensor(self, upto: float) -> float | None:
        """Position of the next unrevealed sensor if it lies at or before ``upto``.

        Must not change what later calls return until :meth:`_taken` is called.
        """
        raise NotImplementedError

    def _taken(self, p: float) -> None:
        """The robot has just revealed the sensor at ``p``."""

    def _barrier_length(self) -> float | None:
        raise NotImplementedError

    def _on_left_turn(self, at: float) -> None:
        pass

    # robot view
    @property
    def end_known(self) -> bool:
        L = self._barrier_length()
        if L is None:
            return False
        if not self.hide_length:
            return True
        return self.frontier >= L - self.radius - self.eps

    @property
    def length(self) -> float:
        if not self.end_known:
            raise UnknownLength("the barrier length has not been disclosed")
        return self._barrier_length()

    @property
    def revealed_count(self) -> int:
        return len(self._committed)

    def revealed(self, j: int) -> bool:
        return 1 <= j <= len(self._committed)

    def sensor(self, j: int) -> float:
        """Position of the 1-based sensor ``j``; it must already be revealed."""
        if not self.revealed(j):
            raise RevelationError(f"sensor {j} lies beyond the frontier {self.frontier}")
        return self._committed[j - 1]

    def move_to(self, x: float) -> None:
        L = self._barrier_length()
        if L is not None:
            x = min(x, L)
        x = max(x, 0.0)
        if abs(x - self.position) <= self.eps:
            return
        heading = 1 if x > self.position else -1
        if heading < 0 and self._heading > 0:
            self._on_left_turn(self.position)
        self._heading = heading
        if x > self.frontier:
            self._advance(x)
            L = self._barrier_length()
            if L is not None:
                x = min(x, L)
        self.odometer += abs(x - self.position)
        self.position = x
        self.waypoints.append(x)

    def _advance(self, x: float) -> None:
        while True:
            p = self._next_sensor(x)
            if p is None or p > x:
                break
            self._committed.append(p)
            self.frontier = max(self.frontier, p)
            self._taken(p)
        self.frontier = max(self.frontier, x)

    def seek(self, j: int) -> float | None:
        """Walk right until sensor ``j`` is revealed; ``None`` at the barrier end."""
        while not self.revealed(j):
            p = self._next_sensor(math.inf)
            if p is None:
                L = self._barrier_length()
                self.move_to(L)
                return None
            self.move_to(max(p, self.position))
            if p <= self.frontier and not self.revealed(j):
                # collocated sensors arrive together
                self._advance(self.frontier)
        x = self.sensor(j)
        if x > self.position:
            self.move_to(x)
        return x

    def trajectory(self) -> Trajectory:
        return Trajectory.from_waypoints(self.waypoints, self.eps)

    def instance(self) -> Instance:
        raise NotImplementedError


class StaticEnvironment(OnlineEnvironment):
    """Progressive view of a fixed instance."""

    def __init__(self, inst: Instance, hide_length: bool = False, eps: float = DEFAULT_EPS):
        super().__init__(inst.radius, hide_length, eps)
        self._inst = inst

    def _next_sensor(self, upto: float) -> float | None:
        k = len(self._committed)
        if k >= self._inst.n:
            return None
        p = float(self._inst.positions[k])
        return p if p <= upto else None

    def _barrier_length(self) -> float:
        return self._inst.length

    def instance(self) -> Instance:
        return self._inst


@dataclass
class EpochState:
    """Control variables of one epoch of the adaptive algorithm."""

    t: float
    x: float = 0.0
    T: float = 0.0
    i: int = 0
    b: float = 0.0
    a: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0


@dataclass(frozen=True)
class Epoch:
    start: float
    end: float
    control: float
    """Control length ``T`` when the epoch closed."""
    travelled: float
    """Distance the robot actually moved while the epoch was open."""


@dataclass
class WalkRecord:
    kind: str
    diff_before: float
    diff_after: float


@dataclass
class OnlineRun:
    algo: str
    trajectory: Trajectory
    triples: int = 0
    doubled: bool = False
    epochs: list[Epoch] = field(default_factory=list)
    """Closed epochs, in order."""
    walks: list[WalkRecord] = field(default_factory=list)
    iterations: list[EpochState] = field(default_factory=list)

    @property
    def length(self) -> float:
        return self.trajectory.length


class Robot:
    """Walk primitives shared by the online algorithms."""

    def __init__(self, env: OnlineEnvironment):
        self.env = env
        self.r = env.radius
        self.eps = env.eps
        self.settled = 0
        self.block_end = 0

    def target(self, j: int) -> float:
        t = (2 * j - 1) * self.r
        if self.env.end_known:
            t = min(t, self.env.length)
        return t

    def balance(self, j: int) -> float:
        return (2 * j - 1) * self.r - self.env.sensor(j)

    def covered_to_end(self) -> bool:
        env = self.env
        return env.end_known and 2 * self.r * self.settled >= env.length - self.eps

    def qualifies(self, j: int) -> bool:
        c = self.balance(j)
        two_r = 2 * self.r
        if c >= -self.eps:
            return True
        if abs(c + two_r) <= self.eps:
            env = self.env
            return env.revealed(j + 1) and abs(env.sensor(j + 1) - env.sensor(j)) <= self.eps
        return c > -two_r


def walk_in_surplus(env: OnlineEnvironment, robot: Robot) -> float | None:
    """Settle surplus sensors; return the potential right turn, or ``None`` once done."""
    while True:
        if robot.covered_to_end():
            return None
        j = robot.settled + 1
        p = robot.target(j)
        if p > env.position:
            env.move_to(p)
            p = robot.target(j)
        if env.revealed(j) and robot.balance(j) >= -robot.eps:
            robot.settled = j
            continue
        if env.end_known and p >= env.length - robot.eps:
            # no sensor left to settle: the caller's coverage accounting is off
            return None
        return p


def walk_in_deficit(env: OnlineEnvironment, robot: Robot) -> float:
    """Collect deficit sensors up to the next potential left turn and return it."""
    j = robot.settled + 1
    while True:
        x = env.seek(j)
        if x is None:
            robot.block_end = env.revealed_count
            raise EndOfBarrier(env.position)
        if robot.qualifies(j):
            robot.block_end = j
            return x
        j += 1


def do_triple(env: OnlineEnvironment, robot: Robot, b: float, y: float) -> bool:
    """Back to ``b`` and out to ``y`` again; False when the return pass alone finished the job."""
    env.move_to(b)
    robot.settled = robot.block_end
    if robot.covered_to_end():
        return False
    env.move_to(y)
    return True


def do_double(env: OnlineEnvironment, robot: Robot, b: float) -> None:
    """Sweep right until enough sensors are in hand, then back to ``b``."""
    robot.settled = max(robot.settled, robot.block_end)
    far = env.position
    while not robot.covered_to_end():
        j = robot.settled + 1
        x = env.seek(j)
        if x is None:
            break
        far = max(far, x, robot.target(j))
        robot.settled = j
    env.move_to(far)
    env.move_to(b)


def adaptive_online(env: OnlineEnvironment) -> OnlineRun:
    """Known-length algorithm that restarts its accounting at cheap epochs."""
    L = env.length
    r = env.radius
    eps = env.eps
    robot = Robot(env)
    run = OnlineRun("adaptive", Trajectory())

    x = walk_in_surplus(env, robot)
    if x is None:
        run.trajectory = env.trajectory()
        return run
    st = EpochState(t=x - r, x=x)
    # the stretch [t, t + r] is charged to this epoch and [x - r, x] to the next, so they cancel
    opened = env.odometer
    while True:
        st.i += 1
        st.b = st.x
        b_rel = st.b - st.t
        st.beta = (st.T + r) / b_rel
        odo = env.odometer
        # control length measured at b, with the robot about to scan right
        before = (st.T + r) - b_rel
        try:
            y = walk_in_deficit(env, robot)
        except EndOfBarrier:
            do_double(env, robot, st.b)
            run.doubled = True
            break
        a_rel = y - st.t
        run.walks.append(WalkRecord("deficit", before, (st.T + r + env.odometer - odo) - a_rel))
        st.a = a_rel
        st.T = st.T + r + 3 * (a_rel - b_rel)
        st.gamma = st.T / a_rel
        run.iterations.append(EpochState(**vars(st)))
        if st.gamma * a_rel - a_rel > L - st.t:
            do_double(env, robot, st.b)
            run.doubled = True
            break
        if not do_triple(env, robot, st.b, y):
            run.doubled = True
            break
        run.triples += 1
        odo = env.odometer
        before = st.T - a_rel
        x = walk_in_surplus(env, robot)
        if x is None:
            break
        x_rel = x - st.t
        run.walks.append(WalkRecord("surplus", before, (st.T + env.odometer - odo) - x_rel))
        st.T = st.T + (x_rel - r - a_rel)
        st.x = x
        if st.T / (x_rel - r) <= 2.5 + eps:
            run.epochs.append(Epoch(st.t, x - r, st.T, env.odometer - opened))
            st = EpochState(t=x - r, x=x)
            opened = env.odometer
    run.trajectory = env.trajectory()
    return run


def triple_always(env: OnlineEnvironment) -> OnlineRun:
    """Cover every gap with a triple; works without knowing the barrier length."""
    robot = Robot(env)
    run = OnlineRun("triple-always", Trajectory())
    while True:
        b = walk_in_surplus(env, robot)
        if b is None:
            break
        known_before = env.end_known
        try:
            y = walk_in_deficit(env, robot)
        except EndOfBarrier:
            do_double(env, robot, b)
            run.doubled = True
            break
        if env.end_known and not known_before:
            do_double(env, robot, b)
            run.doubled = True
            break
        if not do_triple(env, robot, b, y):
            run.doubled = True
            break
        run.triples += 1
    run.trajectory = env.trajectory()
    return run


def fixed_switch(env: OnlineEnvironment, z: float | None = None) -> OnlineRun:
    """Triples for left turns up to ``z`` (default two thirds of the barrier), then one double."""
    L = env.length
    if z is None:
        z = 2 * L / 3
    robot = Robot(env)
    run = OnlineRun("fixed-switch", Trajectory())
    while True:
        b = walk_in_surplus(env, robot)
        if b is None:
            break
        try:
            y = walk_in_deficit(env, robot)
        except EndOfBarrier:
            do_double(env, robot, b)
            run.doubled = True
            break
        if y > z + env.eps:
            do_double(env, robot, b)
            run.doubled = True
            break
        if not do_triple(env, robot, b, y):
            run.doubled = True
            break
        run.triples += 1
    run.trajectory = env.trajectory()
    return run


def always_double(env: OnlineEnvironment) -> OnlineRun:
    """Baseline that never triples: one double from the first gap."""
    robot = Robot(env)
    run = OnlineRun("always-double", Trajectory())
    b = walk_in_surplus(env, robot)
    if b is not None:
        try:
            walk_in_deficit(env, robot)
        except EndOfBarrier:
            pass
        while not env.end_known:
            if env.seek(env.revealed_count + 1) is None:
                break
        do_double(env, robot, b)
        run.doubled = True
    run.trajectory = env.trajectory()
    return run


ALGORITHMS: dict[str, Callable[[OnlineEnvironment], OnlineRun]] = {
    "adaptive": adaptive_online,
    "triple-always": triple_always,
    "fixed-switch": fixed_switch,
    "always-double": always_double,
}

HIDES_LENGTH = {"adaptive": False, "triple-always": True, "fixed-switch": False, "always-double": False}


def run_online(inst: Instance, algo: str, eps: float = DEFAULT_EPS, **kwargs) -> OnlineRun:
    env = StaticEnvironment(inst, hide_length=HIDES_LENGTH[algo], eps=eps)
    return ALGORITHMS[algo](env, **kwargs)
