"""Relocating sensors along a line barrier with a single mobile robot."""

from .core import (
    DEFAULT_EPS,
    Gap,
    InfeasibleCoverage,
    Instance,
    InstanceError,
    NonPositiveRange,
    PositionOutOfRange,
    Trajectory,
    TrajectoryError,
    compute_gaps,
    coverage_balances,
    load_instance,
    trajectory_length,
    validate_instance,
)
from .offline import solve_offline, solve_offline_detailed
from .online import (
    EndOfBarrier,
    OnlineEnvironment,
    RevelationError,
    StaticEnvironment,
    adaptive_online,
    fixed_switch,
    run_online,
    triple_always,
)
from .oracle import TooLarge, brute_force_optimal
from .sim import execute_trajectory

__all__ = [
    "DEFAULT_EPS", "Gap", "InfeasibleCoverage", "Instance", "InstanceError", "NonPositiveRange",
    "PositionOutOfRange", "Trajectory", "TrajectoryError", "compute_gaps", "coverage_balances",
    "load_instance", "trajectory_length", "validate_instance", "solve_offline", "solve_offline_detailed",
    "EndOfBarrier", "OnlineEnvironment", "RevelationError", "StaticEnvironment", "adaptive_online",
    "fixed_switch", "run_online", "triple_always", "TooLarge", "brute_force_optimal", "execute_trajectory",
]
