from .forward import cost_discrete, integrate_forward, particle_field, rk4_step
from .grids import (
    ControlGrid,
    Controls,
    CostateBundle,
    ReplicatorTrajectory,
    TimeGrid,
    TrajectoryBundle,
    check_grid,
    control_values,
)
from .replicator import RENORMALISE_THRESHOLD, integrate_replicator

__all__ = [
    "ControlGrid",
    "Controls",
    "CostateBundle",
    "RENORMALISE_THRESHOLD",
    "ReplicatorTrajectory",
    "TimeGrid",
    "TrajectoryBundle",
    "check_grid",
    "control_values",
    "cost_discrete",
    "integrate_forward",
    "integrate_replicator",
    "particle_field",
    "rk4_step",
]
