r"""이산 비용의 제어에 대한 기울기

순방향 RK4와 왼쪽 끝점 구적법을 거꾸로 따라가는 정확한 이산 수반(adjoint)을 계산한다.
수반 ``a_k = dJ / dx(t_k)``\와 공상태 사이에는 ``r ≈ -N a``\의 관계가 있다.
"""
from typing import NamedTuple, Optional

import numpy as np

from ..problems import ProblemSpec
from ..simulate import Controls, CostateBundle, TrajectoryBundle, check_grid, control_values, particle_field
from .hamiltonian import field_vjp


class DiscreteAdjoint(NamedTuple):
    state_adjoint: np.ndarray  # dJ/dx(t_k), 모양 (S+1, N, d)
    control_gradient: np.ndarray  # dJ/du(t_k), 모양 (S, N, d)


def discrete_adjoint(p: ProblemSpec, trajectory: TrajectoryBundle, u: Controls) -> DiscreteAdjoint:
    """이산 비용의 상태와 제어에 대한 기울기를 역전파로 계산한다."""
    u = control_values(u)
    grid = trajectory.grid
    n = trajectory.n_particles
    check_grid(grid, u, n)
    dt = grid.dt
    states = trajectory.states

    adjoint = np.empty_like(states)
    gradient = np.empty_like(u)
    if p.terminal_cost is None:
        adjoint[-1] = 0.0
    else:
        adjoint[-1] = p.terminal_cost.grad_psi(states[-1], states[-1]) / n

    for k in range(grid.steps - 1, -1, -1):
        u_k, x_k = u[k], states[k]
        # 순방향 단계를 다시 계산한다.
        y1 = x_k
        k1 = particle_field(p, y1, u_k)
        y2 = x_k + 0.5 * dt * k1
        k2 = particle_field(p, y2, u_k)
        y3 = x_k + 0.5 * dt * k2
        k3 = particle_field(p, y3, u_k)
        y4 = x_k + dt * k3

        following = adjoint[k + 1]
        b1 = (dt / 6.0) * following
        b2 = (dt / 3.0) * following
        b3 = (dt / 3.0) * following
        b4 = (dt / 6.0) * following
        c4 = field_vjp(p, y4, u_k, b4)
        b3 = b3 + dt * c4
        c3 = field_vjp(p, y3, u_k, b3)
        b2 = b2 + 0.5 * dt * c3
        c2 = field_vjp(p, y2, u_k, b2)
        b1 = b1 + 0.5 * dt * c2
        c1 = field_vjp(p, y1, u_k, b1)

        running = p.running_cost.grad_psi(x_k, x_k) / n
        adjoint[k] = following + c1 + c2 + c3 + c4 + dt * running

        activation_weighted = sum(
            p.activation.value(y, y)[:, np.newaxis] * b for (y, b) in ((y1, b1), (y2, b2), (y3, b3), (y4, b4))
        )
        gradient[k] = activation_weighted + (dt / n) * p.control_cost.gradient(u_k)
    return DiscreteAdjoint(adjoint, gradient)


def adjoint_gradient(
    p: ProblemSpec, trajectory: TrajectoryBundle, u: Controls, costate: Optional[CostateBundle] = None
) -> np.ndarray:
    r"""이산 비용 ``cost_discrete``\의 제어 ``u_i(t_k)``\에 대한 기울기, 모양 ``(S, N, d)``.

    부호는 최소화 문제의 기울기이며 음의 방향이 하강 방향이다.

    Parameters
    ----------
    p : ProblemSpec
    trajectory : TrajectoryBundle
        ``u``\로 얻은 순방향 궤적
    u : ControlGrid or array
    costate : CostateBundle : optional
        주어지면 연속 공상태로 만든 근사식 ``dt (phi'(u_i) - h(x_i) r_i) / N``\을 쓴다.
        주어지지 않으면 정확한 이산 수반을 계산한다.

    Returns
    -------
    gradient : ndarray, shape (S, N, d)
    """
    u = control_values(u)
    if costate is None:
        return discrete_adjoint(p, trajectory, u).control_gradient
    grid = trajectory.grid
    n = trajectory.n_particles
    gradient = np.empty_like(u)
    for k in range(grid.steps):
        x_k = trajectory.states[k]
        h = p.activation.value(x_k, x_k)
        gradient[k] = (grid.dt / n) * (p.control_cost.gradient(u[k]) - h[:, np.newaxis] * costate.costates[k])
    return gradient


def discrete_costate(p: ProblemSpec, trajectory: TrajectoryBundle, u: Controls) -> CostateBundle:
    """이산 수반에 ``-N``\\을 곱해 공상태와 같은 척도로 만든 값"""
    adjoint = discrete_adjoint(p, trajectory, u).state_adjoint
    return CostateBundle(trajectory.grid, -trajectory.n_particles * adjoint)


__all__ = ["DiscreteAdjoint", "adjoint_gradient", "discrete_adjoint", "discrete_costate"]
