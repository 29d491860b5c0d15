"""제어된 입자계의 순방향 적분과 이산 비용"""
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from ..errors import IntegrationError
from ..problems import ProblemSpec
from .grids import Controls, TimeGrid, TrajectoryBundle, check_grid, control_values


def rk4_step(rhs: Callable[[np.ndarray], np.ndarray], y: np.ndarray, dt: float) -> np.ndarray:
    """고전적인 4단 Runge-Kutta 한 단계. ``rhs``\\는 상태만 받는다(구간 내에서 자율계)."""
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def particle_field(p: ProblemSpec, states: np.ndarray, u: np.ndarray) -> np.ndarray:
    r"""모든 입자의 속도 ``v(x_i, psi) + h(x_i, psi) u_i``. ``psi``\는 ``states``\의 경험측도이다."""
    h = p.activation.value(states, states)
    return p.velocity.value(states, states) + h[:, np.newaxis] * u


def integrate_forward(p: ProblemSpec, u: Controls, x0: ArrayLike, grid: TimeGrid) -> TrajectoryBundle:
    r"""입자계 ``dx_i/dt = v(x_i, psi_t) + h(x_i, psi_t) u_i(t)``\를 RK4로 적분한다.

    경험측도는 각 단계(stage)마다 전체 입자 상태로부터 다시 계산한다.
    제어는 각 구간에서 왼쪽 노드 값으로 고정된다.

    Parameters
    ----------
    p : ProblemSpec
    u : ControlGrid or array, shape (S, N, d)
    x0 : array-like, shape (N, d)
        초기 위치
    grid : TimeGrid

    Returns
    -------
    trajectory : TrajectoryBundle

    Exceptions
    ----------
    IntegrationError
        상태가 유한하지 않게 되었을 경우. 구간 인덱스를 담는다.
    """
    u = control_values(u)
    x0 = np.array(x0, dtype=float).reshape(-1, p.dim)
    check_grid(grid, u, x0.shape[0])
    states = np.empty((grid.nodes,) + x0.shape)
    states[0] = x0
    dt = grid.dt
    for k in range(grid.steps):
        u_k = u[k]
        states[k + 1] = rk4_step(lambda y: particle_field(p, y, u_k), states[k], dt)
        if not np.all(np.isfinite(states[k + 1])):
            raise IntegrationError("Particle state became non-finite", step=k)
    return TrajectoryBundle(grid, states)


def cost_discrete(p: ProblemSpec, trajectory: TrajectoryBundle, u: Controls) -> float:
    r"""이산 비용 ``sum_k dt [L(psi_k) + (1/N) sum_i phi(u_i(t_k))] + g(psi_S)``.

    실행 비용은 왼쪽 끝점 구적법으로 계산하므로 시간 간격에 대해 1차 정확도를 갖는다.
    """
    u = control_values(u)
    grid = trajectory.grid
    check_grid(grid, u, trajectory.n_particles)
    running = sum(p.running_cost.value(trajectory.states[k]) for k in range(grid.steps))
    control = float(np.sum(p.control_cost.value(u))) / trajectory.n_particles
    terminal = 0.0 if p.terminal_cost is None else p.terminal_cost.value(trajectory.states[-1])
    return float(grid.dt * (running + control) + terminal)


__all__ = ["cost_discrete", "integrate_forward", "particle_field", "rk4_step"]
