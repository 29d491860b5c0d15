"""사영 기울기 하강법에 의한 직접 최적화"""
import logging
from typing import List, NamedTuple, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..problems import ProblemSpec
from ..simulate import ControlGrid, Controls, TimeGrid, control_values, cost_discrete, integrate_forward
from .gradient import adjoint_gradient

logger = logging.getLogger(__name__)

ARMIJO_CONSTANT = 1e-4
SHRINK = 0.5
GROW = 2.0


class DirectResult(NamedTuple):
    controls: ControlGrid
    cost_history: List[float]  # 받아들인 반복의 비용. 단조 감소한다.
    iterations: int
    converged: bool
    status: str  # "converged", "max_iter", "line_search_failed"


def direct_optimize(
    p: ProblemSpec,
    x0: ArrayLike,
    grid: TimeGrid,
    u_init: Optional[Controls] = None,
    step: float = 1.0,
    tol: float = 1e-10,
    max_iter: int = 1000,
    min_step: float = 1e-12,
) -> DirectResult:
    r"""이산 비용 ``cost_discrete``\를 사영 기울기 하강법과 Armijo 백트래킹으로 최소화한다.

    탐색 방향은 기울기에 ``N / dt``\를 곱한 값이다. 이 척도에서 ``step = 1``\은 해밀토니안의
    기울기 방향으로 한 번 움직이는 것과 같다. 후보 ``u_new = P_K(u - step * direction)``\는

    ``J(u_new) <= J(u) - 1e-4 * <grad J(u), u - u_new>``

    를 만족할 때 받아들이고, 그렇지 않으면 ``step``\을 절반으로 줄인다. 받아들인 다음에는 ``step``\을
    두 배로 늘리되 처음 값을 넘지 않게 한다.

    Parameters
    ----------
    p : ProblemSpec
    x0 : array-like, shape (N, d)
    grid : TimeGrid
    u_init : ControlGrid or array : optional
        ``K``\에 속해야 한다. 기본값은 0이다.
    step : float : optional
        처음 걸음 크기
    tol : float : optional
        받아들인 갱신의 최대 변화량이 이보다 작으면 수렴으로 본다.
    max_iter : int : optional
    min_step : float : optional
        걸음 크기가 이보다 작아지면 선 탐색 실패로 멈춘다.

    Returns
    -------
    result : DirectResult
    """
    if step <= 0 or min_step <= 0:
        raise ValueError("`step` and `min_step` must be positive value.")
    if max_iter < 1:
        raise ValueError("`max_iter` must be positive value.")
    x0 = np.array(x0, dtype=float).reshape(-1, p.dim)
    n = x0.shape[0]
    if u_init is None:
        u = np.zeros((grid.steps, n, p.dim))
    else:
        u = control_values(u_init).copy()
        if not np.all(p.control_set.contains(u, atol=1e-12)):
            raise ValueError("`u_init` must lie in the control set.")

    trajectory = integrate_forward(p, u, x0, grid)
    cost = cost_discrete(p, trajectory, u)
    history = [cost]
    alpha = step
    status = "max_iter"
    iterations = 0
    for iterations in range(1, max_iter + 1):
        gradient = adjoint_gradient(p, trajectory, u)
        direction = gradient * (n / grid.dt)
        while True:
            candidate = p.control_set.project(u - alpha * direction)
            candidate_trajectory = integrate_forward(p, candidate, x0, grid)
            candidate_cost = cost_discrete(p, candidate_trajectory, candidate)
            decrease = float(np.sum(gradient * (u - candidate)))
            if candidate_cost <= cost - ARMIJO_CONSTANT * decrease:
                break
            alpha *= SHRINK
            if alpha < min_step:
                break
        if alpha < min_step:
            status = "line_search_failed"
            break

        move = float(np.max(np.abs(candidate - u)))
        u, trajectory, cost = candidate, candidate_trajectory, candidate_cost
        history.append(cost)
        logger.debug("direct iteration %d: cost %.12g, step %.3e, move %.3e", iterations, cost, alpha, move)
        if move < tol:
            status = "converged"
            break
        alpha = min(alpha * GROW, step)

    if status != "converged":
        logger.warning("Direct optimizer stopped without convergence (%s) after %d iterations", status, iterations)
    return DirectResult(ControlGrid(u), history, iterations, status == "converged", status)


__all__ = ["ARMIJO_CONSTANT", "DirectResult", "direct_optimize"]
