r"""입자 해가 만드는 측도들

노드 ``t_k``\마다 다음 측도를 만든다.

- ``psi(k)``: 상태의 경험측도 ``Psi_{t_k}``
- ``nu(k)``: 상태-공상태 원자 ``(x_i, r_i)``\의 경험측도
- ``rho(k)``: ``nu(k)``\의 원자에 제어 ``u_i(t_k)``\를 실은 벡터 측도
- ``mu(k)``: ``psi(k)``\의 원자에 제어를 실은 벡터 측도

제어는 구간의 왼쪽 노드에만 있으므로 ``rho``\와 ``mu``\는 ``k < S``\에서만 정의된다.
"""
import numpy as np

from ..measures import EmpiricalMeasure, PhaseMeasure, VectorMeasure
from ..simulate import Controls, CostateBundle, TimeGrid, TrajectoryBundle, control_values


class GeneratedPair:
    """같은 제어로 얻은 궤적과 공상태를 묶은 것

    :param grid: 시간 격자
    :param states: 모양 ``(S+1, N, d)``
    :param costates: 모양 ``(S+1, N, d)``
    :param controls: 모양 ``(S, N, d)``
    """

    def __init__(self, grid: TimeGrid, states: np.ndarray, costates: np.ndarray, controls: np.ndarray):
        if states.shape != costates.shape:
            raise ValueError("`states` and `costates` must have the same shape.")
        if states.shape[0] != grid.nodes or controls.shape != (grid.steps,) + states.shape[1:]:
            raise ValueError("Shapes of `states` and `controls` do not match the time grid.")
        self._grid = grid
        self._states = states
        self._costates = costates
        self._controls = controls

    @property
    def grid(self) -> TimeGrid:
        return self._grid

    @property
    def states(self) -> np.ndarray:
        return self._states

    @property
    def costates(self) -> np.ndarray:
        return self._costates

    @property
    def controls(self) -> np.ndarray:
        return self._controls

    @property
    def n_particles(self) -> int:
        return self._states.shape[1]

    @property
    def dim(self) -> int:
        return self._states.shape[2]

    def psi(self, k: int) -> EmpiricalMeasure:
        return EmpiricalMeasure(self._states[k])

    def nu(self, k: int) -> PhaseMeasure:
        return PhaseMeasure(self._states[k], self._costates[k])

    def rho(self, k: int) -> VectorMeasure:
        self._check_control_node(k)
        return VectorMeasure(self.nu(k), self._controls[k])

    def mu(self, k: int) -> VectorMeasure:
        self._check_control_node(k)
        return VectorMeasure(self.psi(k), self._controls[k])

    def _check_control_node(self, k: int) -> None:
        if not 0 <= k < self._grid.steps:
            raise IndexError(f"Controls are defined on nodes 0..{self._grid.steps - 1}, got {k}.")

    def __repr__(self) -> str:
        return f"GeneratedPair(particles={self.n_particles}, dim={self.dim}, grid={self._grid!r})"


def build_generated(trajectory: TrajectoryBundle, costate: CostateBundle, u: Controls) -> GeneratedPair:
    """궤적, 공상태, 제어에서 :class:`GeneratedPair`\\를 만든다."""
    if trajectory.grid != costate.grid:
        raise ValueError("`trajectory` and `costate` must share the time grid.")
    return GeneratedPair(trajectory.grid, trajectory.states, costate.costates, control_values(u))


__all__ = ["GeneratedPair", "build_generated"]
