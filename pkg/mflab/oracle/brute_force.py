r"""아주 작은 문제를 위한 전수 탐색

풀이기와 무관하게 순방향 적분과 이산 비용만으로 격자 위의 전역 최적 제어를 찾는다.
후보는 제어 집합의 격자점들의 곱집합을 사전순으로 훑으며, 비용이 같으면 먼저 나온 후보를 고른다.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Tuple

import numpy as np
from numpy.typing import ArrayLike

from ..errors import OracleBudgetError
from ..problems import ProblemSpec
from ..simulate import ControlGrid, TimeGrid, cost_discrete, integrate_forward

logger = logging.getLogger(__name__)

EVALUATION_BUDGET = 10**7
MAX_TIME_VARYING_STEPS = 3


class OracleResult(NamedTuple):
    controls: ControlGrid
    cost: float
    evaluations: int


def _check_budget(points: int, slots: int) -> int:
    evaluations = points**slots
    if evaluations > EVALUATION_BUDGET:
        raise OracleBudgetError(
            f"Exhaustive search needs {points}^{slots} = {evaluations} evaluations (budget {EVALUATION_BUDGET})."
        )
    return evaluations


def _search(
    p: ProblemSpec, x0: np.ndarray, grid: TimeGrid, mesh: np.ndarray, slots: int, threads: int
) -> Tuple[float, np.ndarray, int]:
    r"""``mesh``\의 점 ``slots``\개를 고르는 모든 경우 중 비용이 가장 작은 경우를 찾는다."""
    n = x0.shape[0]
    evaluations = _check_budget(mesh.shape[0], slots)

    def to_controls(choice: Tuple[int, ...]) -> np.ndarray:
        # 고른 점이 N개이면 모든 구간에 같은 제어를 쓴다.
        values = mesh[list(choice)].reshape(-1, n, p.dim)
        return np.broadcast_to(values, (grid.steps, n, p.dim))

    def scan(first: int) -> Tuple[float, Tuple[int, ...]]:
        best_cost, best_choice = np.inf, None
        for rest in itertools.product(range(mesh.shape[0]), repeat=slots - 1):
            choice = (first,) + rest
            u = to_controls(choice)
            cost = cost_discrete(p, integrate_forward(p, u, x0, grid), u)
            if cost < best_cost:
                best_cost, best_choice = cost, choice
        return best_cost, best_choice

    with ThreadPoolExecutor(max_workers=threads) as executor:
        partial = list(executor.map(scan, range(mesh.shape[0])))
    # 비용이 같으면 사전순으로 앞선 후보
    best_cost, best_choice = min(partial, key=lambda item: (item[0], item[1]))
    return best_cost, to_controls(best_choice), evaluations


def brute_force_constant_controls(
    p: ProblemSpec, x0: ArrayLike, grid: TimeGrid, m: int, threads: int = 1
) -> OracleResult:
    r"""시간에 대해 상수인 제어 중에서 격자 위의 전역 최적을 찾는다.

    각 입자의 제어는 ``p.control_set.mesh(m)``\의 점 중 하나이며 모든 구간에서 같다.

    Parameters
    ----------
    p : ProblemSpec
    x0 : array-like, shape (N, d)
    grid : TimeGrid
    m : int
        축마다의 격자점 수. 홀수이면 0이 격자에 들어간다.
    threads : int : optional

    Returns
    -------
    result : OracleResult

    Exceptions
    ----------
    OracleBudgetError
        평가 횟수 ``P^N``\이 ``10^7``\을 넘을 경우 (``P``\는 격자점 수)
    """
    x0 = np.array(x0, dtype=float).reshape(-1, p.dim)
    mesh = p.control_set.mesh(m)
    cost, u, evaluations = _search(p, x0, grid, mesh, x0.shape[0], threads)
    logger.info("Constant-control oracle: %d evaluations, best cost %.12g", evaluations, cost)
    return OracleResult(ControlGrid(u), float(cost), evaluations)


def brute_force_time_varying(
    p: ProblemSpec, x0: ArrayLike, grid: TimeGrid, m: int, threads: int = 1
) -> OracleResult:
    r"""노드마다 다른 제어를 허용하는 전수 탐색. 구간 수는 3 이하여야 한다.

    Exceptions
    ----------
    ValueError
        ``grid``\의 구간 수가 3보다 클 경우
    OracleBudgetError
        평가 횟수 ``P^(N S)``\가 ``10^7``\을 넘을 경우
    """
    if grid.steps > MAX_TIME_VARYING_STEPS:
        raise ValueError(f"`grid` must have at most {MAX_TIME_VARYING_STEPS} steps.")
    x0 = np.array(x0, dtype=float).reshape(-1, p.dim)
    mesh = p.control_set.mesh(m)
    cost, u, evaluations = _search(p, x0, grid, mesh, grid.steps * x0.shape[0], threads)
    logger.info("Time-varying oracle: %d evaluations, best cost %.12g", evaluations, cost)
    return OracleResult(ControlGrid(u), float(cost), evaluations)


__all__ = [
    "EVALUATION_BUDGET",
    "MAX_TIME_VARYING_STEPS",
    "OracleResult",
    "brute_force_constant_controls",
    "brute_force_time_varying",
]
