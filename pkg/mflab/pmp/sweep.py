"""Forward-backward sweep"""
import logging
from typing import List, NamedTuple, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import SweepDivergedError
from ..problems import ProblemSpec
from ..simulate import (
    ControlGrid,
    Controls,
    CostateBundle,
    TimeGrid,
    TrajectoryBundle,
    control_values,
    cost_discrete,
    integrate_forward,
)
from .costate import integrate_costate_backward
from .hamiltonian import hamiltonian_n, maximize_hamiltonian_pointwise

logger = logging.getLogger(__name__)

DIVERGENCE_FACTOR = 10.0


class SweepReport(NamedTuple):
    iterations: int
    residuals: List[float]  # 반복별 해밀토니안 최대성 잔차
    update_norms: List[float]  # 반복별 제어 변화량의 최댓값
    costs: List[float]  # 반복별 비용
    converged: bool


class SweepResult(NamedTuple):
    controls: ControlGrid
    trajectory: TrajectoryBundle
    costate: CostateBundle
    report: SweepReport
    cost: float


def maximality_residual(
    p: ProblemSpec, trajectory: TrajectoryBundle, costate: CostateBundle, u: np.ndarray, u_hat: np.ndarray
) -> float:
    """노드별 ``H_N(x, r, u_hat) - H_N(x, r, u)``\\의 최댓값"""
    gaps = [
        hamiltonian_n(p, trajectory.states[k], costate.costates[k], u_hat[k])
        - hamiltonian_n(p, trajectory.states[k], costate.costates[k], u[k])
        for k in range(u.shape[0])
    ]
    return max(0.0, float(max(gaps)))


def forward_backward_sweep(
    p: ProblemSpec,
    x0: ArrayLike,
    grid: TimeGrid,
    theta: float = 0.5,
    tol: float = 1e-8,
    max_iter: int = 500,
    u_init: Optional[Controls] = None,
) -> SweepResult:
    r"""Pontryagin 계를 forward-backward sweep으로 푼다.

    한 번의 반복은 다음과 같다.

    1. 현재 제어로 상태를 순방향 적분한다.
    2. 공상태를 역방향 적분한다.
    3. 노드별로 해밀토니안을 최대화하는 ``u_hat``\을 구한다.
    4. ``u <- (1 - theta) u + theta u_hat``\으로 갱신한다. ``K``\가 볼록이므로 결과도 ``K``\에 속한다.

    제어 변화량 ``theta * max|u_hat - u|``\이 ``tol``\보다 작아지면 멈춘다. 반환하는 궤적과 공상태는
    마지막으로 갱신한 제어로 다시 계산한 값이다.

    Parameters
    ----------
    p : ProblemSpec
    x0 : array-like, shape (N, d)
    grid : TimeGrid
    theta : float in (0, 1] : optional
        완화 계수. 기본값은 0.5이다.
    tol : float : optional
    max_iter : int : optional
    u_init : ControlGrid or array : optional
        초기 제어. 기본값은 0이다.

    Returns
    -------
    result : SweepResult
        ``report.converged``\는 허용 오차를 만족했을 때만 True이다.

    Exceptions
    ----------
    SweepDivergedError
        비용이 처음 비용보다 ``10 * max(|J_0|, 1)`` 이상 커졌을 경우. 그때까지의 기록을 담는다.
    """
    if not 0 < theta <= 1:
        raise ValueError("`theta` must be in (0, 1].")
    if tol <= 0:
        raise ValueError("`tol` must be positive value.")
    if max_iter < 1:
        raise ValueError("`max_iter` must be positive value.")
    x0 = np.array(x0, dtype=float).reshape(-1, p.dim)
    n = x0.shape[0]
    if u_init is None:
        u = np.zeros((grid.steps, n, p.dim))
    else:
        u = p.control_set.project(control_values(u_init))

    residuals: List[float] = []
    update_norms: List[float] = []
    costs: List[float] = []
    converged = False
    initial_cost = None
    for iteration in range(1, max_iter + 1):
        trajectory = integrate_forward(p, u, x0, grid)
        cost = cost_discrete(p, trajectory, u)
        costs.append(cost)
        if initial_cost is None:
            initial_cost = cost
        elif cost - initial_cost > DIVERGENCE_FACTOR * max(abs(initial_cost), 1.0):
            report = SweepReport(iteration, residuals, update_norms, costs, False)
            raise SweepDivergedError(f"Sweep diverged at iteration {iteration} (cost {cost!r})", report)
        costate = integrate_costate_backward(p, trajectory, u)
        u_hat = np.stack(
            [maximize_hamiltonian_pointwise(p, trajectory.states[k], costate.costates[k]) for k in range(grid.steps)]
        )
        residuals.append(maximality_residual(p, trajectory, costate, u, u_hat))
        update = theta * float(np.max(np.abs(u_hat - u)))
        update_norms.append(update)
        u = (1.0 - theta) * u + theta * u_hat
        logger.debug(
            "sweep iteration %d: cost %.12g, residual %.3e, update %.3e", iteration, cost, residuals[-1], update
        )
        if update < tol:
            converged = True
            break
    else:
        logger.warning("Sweep did not converge within %d iterations (last update %.3e)", max_iter, update_norms[-1])

    u = p.control_set.project(u)
    trajectory = integrate_forward(p, u, x0, grid)
    costate = integrate_costate_backward(p, trajectory, u)
    report = SweepReport(len(costs), residuals, update_norms, costs, converged)
    return SweepResult(ControlGrid(u), trajectory, costate, report, cost_discrete(p, trajectory, u))


__all__ = ["DIVERGENCE_FACTOR", "SweepReport", "SweepResult", "forward_backward_sweep", "maximality_residual"]
