"""시간 격자, 제어 격자와 적분 결과 묶음"""
from typing import NamedTuple, Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from ..measures import EmpiricalMeasure, PhaseMeasure


class TimeGrid:
    r"""``[0, T]``\를 ``S``\등분한 균일 격자. 노드는 ``t_0 = 0, ..., t_S = T``\이다.

    :param horizon: 구간 길이 ``T`` (양수)
    :param steps: 구간 수 ``S`` (1 이상)
    """

    def __init__(self, horizon: float, steps: int):
        if horizon <= 0:
            raise ValueError("`horizon` must be positive value.")
        if steps < 1:
            raise ValueError("`steps` must be at least 1.")
        self._horizon = float(horizon)
        self._steps = int(steps)

    @property
    def horizon(self) -> float:
        return self._horizon

    @property
    def steps(self) -> int:
        return self._steps

    @property
    def nodes(self) -> int:
        """노드 수 ``S + 1``"""
        return self._steps + 1

    @property
    def dt(self) -> float:
        return self._horizon / self._steps

    @property
    def times(self) -> np.ndarray:
        times = np.arange(self.nodes) * self.dt
        times[-1] = self._horizon
        return times

    def refined(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self._horizon, self._steps * factor)

    def __eq__(self, other) -> bool:
        return isinstance(other, TimeGrid) and (self._horizon, self._steps) == (other._horizon, other._steps)

    def __hash__(self) -> int:
        return hash((self._horizon, self._steps))

    def __repr__(self) -> str:
        return f"TimeGrid(horizon={self._horizon}, steps={self._steps})"


class ControlGrid:
    r"""구간별 상수 제어 ``u_i(t_k)``, ``k = 0, ..., S-1``. 값의 모양은 ``(S, N, d)``\이다.

    ``control_set``\이 주어지면 모든 값이 ``K``\에 속하는지 확인한다.
    """

    def __init__(self, values: ArrayLike, control_set=None, atol: float = 1e-12):
        array = np.array(values, dtype=float)
        if array.ndim != 3:
            raise ValueError("`values` must have shape (steps, particles, dim).")
        if control_set is not None and not np.all(control_set.contains(array, atol=atol)):
            raise ValueError("Every control value must lie in the control set.")
        array.flags.writeable = False
        self._values = array

    @classmethod
    def zeros(cls, steps: int, n_particles: int, dim: int) -> "ControlGrid":
        return cls(np.zeros((steps, n_particles, dim)))

    @classmethod
    def constant(cls, per_particle: ArrayLike, steps: int) -> "ControlGrid":
        """입자별로 시간에 대해 상수인 제어. ``per_particle``\\의 모양은 ``(N, d)``"""
        per_particle = np.atleast_2d(np.asarray(per_particle, dtype=float))
        return cls(np.broadcast_to(per_particle, (steps,) + per_particle.shape))

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def steps(self) -> int:
        return self._values.shape[0]

    @property
    def n_particles(self) -> int:
        return self._values.shape[1]

    @property
    def dim(self) -> int:
        return self._values.shape[2]

    def node(self, k: int) -> np.ndarray:
        return self._values[k]

    def __repr__(self) -> str:
        return f"ControlGrid(steps={self.steps}, particles={self.n_particles}, dim={self.dim})"


Controls = Union[ControlGrid, ArrayLike]


def control_values(u: Controls) -> np.ndarray:
    """:class:`ControlGrid` 또는 배열을 ``(S, N, d)`` 배열로 바꾼다."""
    if isinstance(u, ControlGrid):
        return u.values
    array = np.asarray(u, dtype=float)
    if array.ndim != 3:
        raise ValueError("Controls must have shape (steps, particles, dim).")
    return array


class TrajectoryBundle(NamedTuple):
    grid: TimeGrid
    states: np.ndarray  # x_i(t_k), 모양 (S+1, N, d)

    @property
    def n_particles(self) -> int:
        return self.states.shape[1]

    @property
    def dim(self) -> int:
        return self.states.shape[2]

    def measure(self, k: int) -> EmpiricalMeasure:
        """노드 ``k``\\에서의 경험측도 ``Psi_{t_k}``"""
        return EmpiricalMeasure(self.states[k])


class CostateBundle(NamedTuple):
    grid: TimeGrid
    costates: np.ndarray  # r_i(t_k), 모양 (S+1, N, d)

    def phase_measure(self, trajectory: TrajectoryBundle, k: int) -> PhaseMeasure:
        return PhaseMeasure(trajectory.states[k], self.costates[k])


class ReplicatorTrajectory(NamedTuple):
    grid: TimeGrid
    states: np.ndarray  # 모양 (S+1, N, d)
    labels: np.ndarray  # 모양 (S+1, N, n)
    renormalisations: int  # 적분 도중 라벨을 다시 정규화한 횟수

    def positions(self) -> TrajectoryBundle:
        return TrajectoryBundle(self.grid, self.states)


def check_grid(grid: TimeGrid, u: np.ndarray, n_particles: Optional[int] = None) -> None:
    if u.shape[0] != grid.steps:
        raise ValueError(f"Controls have {u.shape[0]} steps but the time grid has {grid.steps}.")
    if n_particles is not None and u.shape[1] != n_particles:
        raise ValueError("Controls and initial data must have the same number of particles.")


__all__ = [
    "ControlGrid",
    "Controls",
    "CostateBundle",
    "ReplicatorTrajectory",
    "TimeGrid",
    "TrajectoryBundle",
    "check_grid",
    "control_values",
]
