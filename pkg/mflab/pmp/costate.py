"""공상태의 역방향 적분"""
import numpy as np

from ..errors import IntegrationError
from ..problems import ProblemSpec
from ..simulate import Controls, CostateBundle, TrajectoryBundle, check_grid, control_values, particle_field
from .hamiltonian import field_vjp


def terminal_costate(p: ProblemSpec, x_terminal: np.ndarray) -> np.ndarray:
    r"""종단 조건 ``r_i(T) = -nabla_psi g(Psi_T)(x_i(T))``. 종단 비용이 없으면 0이다.

    분산 최대화 비용 ``g = -(1/2) Var``\이면 ``r_i(T) = x_i(T) - mean(x(T))``\이다.
    """
    if p.terminal_cost is None:
        return np.zeros_like(x_terminal)
    return -p.terminal_cost.grad_psi(x_terminal, x_terminal)


def costate_velocity(p: ProblemSpec, x: np.ndarray, u: np.ndarray, r: np.ndarray) -> np.ndarray:
    r"""공상태의 속도.

    ``dr_i/dt = -grad_x v(x_i)^T r_i - (1/N) sum_k grad_psi v(x_k)(x_i)^T r_k + grad_psi L(x_i)
    - grad_x h(x_i) <r_i, u_i> - (1/N) sum_k grad_psi h(x_k)(x_i) <r_k, u_k>``
    """
    return -field_vjp(p, x, u, r) + p.running_cost.grad_psi(x, x)


def hermite_midpoint(p: ProblemSpec, x_left: np.ndarray, x_right: np.ndarray, u: np.ndarray, dt: float) -> np.ndarray:
    """구간 양끝의 상태와 속도로 만든 3차 에르미트 보간의 중점"""
    slope_left = particle_field(p, x_left, u)
    slope_right = particle_field(p, x_right, u)
    return 0.5 * (x_left + x_right) + (dt / 8.0) * (slope_left - slope_right)


def integrate_costate_backward(p: ProblemSpec, trajectory: TrajectoryBundle, u: Controls) -> CostateBundle:
    r"""종단 조건에서 시작해 공상태를 RK4로 역방향 적분한다.

    각 구간에서 제어는 왼쪽 노드 값으로 고정되고, 구간 중점의 상태는 3차 에르미트 보간으로 얻는다.

    Parameters
    ----------
    p : ProblemSpec
    trajectory : TrajectoryBundle
        같은 제어로 얻은 순방향 궤적
    u : ControlGrid or array, shape (S, N, d)

    Returns
    -------
    costate : CostateBundle

    Exceptions
    ----------
    IntegrationError
        공상태가 유한하지 않게 되었을 경우
    """
    u = control_values(u)
    grid = trajectory.grid
    check_grid(grid, u, trajectory.n_particles)
    states = trajectory.states
    costates = np.empty_like(states)
    costates[-1] = terminal_costate(p, states[-1])
    dt = grid.dt
    for k in range(grid.steps - 1, -1, -1):
        u_k = u[k]
        x_left, x_right = states[k], states[k + 1]
        x_mid = hermite_midpoint(p, x_left, x_right, u_k, dt)
        r = costates[k + 1]
        g1 = costate_velocity(p, x_right, u_k, r)
        g2 = costate_velocity(p, x_mid, u_k, r - 0.5 * dt * g1)
        g3 = costate_velocity(p, x_mid, u_k, r - 0.5 * dt * g2)
        g4 = costate_velocity(p, x_left, u_k, r - dt * g3)
        costates[k] = r - (dt / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4)
        if not np.all(np.isfinite(costates[k])):
            raise IntegrationError("Costate became non-finite", step=k)
    return CostateBundle(grid, costates)


__all__ = ["costate_velocity", "hermite_midpoint", "integrate_costate_backward", "terminal_costate"]
