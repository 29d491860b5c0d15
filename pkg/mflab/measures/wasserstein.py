"""같은 무게를 갖는 경험측도 사이의 Wasserstein-1 거리

- ``w1_exact_1d``: 1차원에서 정렬로 계산하는 정확한 값
- ``w1_exact_assignment``: 최적 할당 문제로 계산하는 정확한 값 (원자 수 상한 있음)
- ``w1_sinkhorn``: 엔트로피 정규화 근사값 (원자 수가 달라도 된다)
- ``w1_between``: 원자 수가 다른 두 측도 사이의 거리. 가능하면 정확한 값을 쓴다.
"""
import logging
from typing import Literal, NamedTuple, Union

import numpy as np
import ot
from numpy.typing import ArrayLike
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from ..errors import AssignmentCapError
from .empirical import AnyMeasure, atoms_of

logger = logging.getLogger(__name__)

ASSIGNMENT_CAP = 512
SINKHORN_MAX_ITER = 10_000
SINKHORN_STOP_THRESHOLD = 1e-9

MeasureLike = Union[AnyMeasure, ArrayLike]


class SinkhornResult(NamedTuple):
    value: float  # 주변분포에 맞게 반올림한 수송 계획의 비용
    converged: bool  # 마지막 주변분포 오차가 정지 기준보다 작았는지 여부
    marginal_error: float  # 마지막으로 측정한 주변분포 오차
    iterations: int


class DistanceResult(NamedTuple):
    value: float
    method: Literal["exact", "replicated", "sinkhorn"]
    approximate: bool


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[1] != b.shape[1]:
        raise ValueError("Measures must have the same dimension.")
    if a.shape[0] != b.shape[0]:
        raise ValueError("Measures must have the same number of atoms.")


def w1_exact_1d(a: MeasureLike, b: MeasureLike) -> float:
    r"""1차원 경험측도 사이의 정확한 W1 거리.

    정렬된 원자끼리 짝을 지으면 최적이므로 ``(1/N) sum |a_(i) - b_(i)|``\이다.
    같은 값의 원자는 안정 정렬 순서대로 짝지어진다.

    Parameters
    ----------
    a, b : EmpiricalMeasure or array-like
        원자 수가 같은 1차원 측도

    Returns
    -------
    distance : float

    Examples
    --------
    >>> w1_exact_1d([0.0, 2.0], [1.0, 3.0])
    1.0
    """
    a_atoms, b_atoms = atoms_of(a), atoms_of(b)
    if a_atoms.shape[1] != 1 or b_atoms.shape[1] != 1:
        raise ValueError("`w1_exact_1d` accepts 1-dimensional measures only.")
    _check_same_shape(a_atoms, b_atoms)
    a_sorted = np.sort(a_atoms[:, 0], kind="stable")
    b_sorted = np.sort(b_atoms[:, 0], kind="stable")
    return float(np.abs(a_sorted - b_sorted).mean())


def w1_exact_assignment(a: MeasureLike, b: MeasureLike, cap: int = ASSIGNMENT_CAP) -> float:
    r"""원자 수가 같은 경험측도 사이의 정확한 W1 거리.

    같은 무게의 경험측도끼리의 최적 수송은 순열로 표현되므로 할당 문제
    ``min_sigma (1/N) sum |a_i - b_sigma(i)|``\를 푼다. 계산량이 ``O(N^3)``\이므로
    ``N``\이 ``cap``\보다 크면 거부한다.

    Parameters
    ----------
    a, b : EmpiricalMeasure, PhaseMeasure or array-like
        원자 수와 차원이 같은 측도
    cap : int : optional
        허용하는 최대 원자 수. 기본값은 512이다.

    Returns
    -------
    distance : float

    Exceptions
    ----------
    AssignmentCapError
        원자 수가 ``cap``\보다 클 경우
    """
    a_atoms, b_atoms = atoms_of(a), atoms_of(b)
    _check_same_shape(a_atoms, b_atoms)
    if a_atoms.shape[0] > cap:
        raise AssignmentCapError(
            f"Exact assignment is capped at {cap} atoms (got {a_atoms.shape[0]}); use `w1_sinkhorn` instead."
        )
    cost = cdist(a_atoms, b_atoms)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].mean())


def _round_to_marginals(plan: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # 근사 수송 계획을 주변분포가 정확히 a, b인 계획으로 옮긴다.
    row_scale = np.minimum(a / np.maximum(plan.sum(axis=1), np.finfo(float).tiny), 1.0)
    plan = plan * row_scale[:, np.newaxis]
    col_scale = np.minimum(b / np.maximum(plan.sum(axis=0), np.finfo(float).tiny), 1.0)
    plan = plan * col_scale[np.newaxis, :]
    row_deficit = a - plan.sum(axis=1)
    col_deficit = b - plan.sum(axis=0)
    total_deficit = row_deficit.sum()
    if total_deficit > 0:
        plan = plan + np.outer(row_deficit, col_deficit) / total_deficit
    return plan


def w1_sinkhorn(
    a: MeasureLike,
    b: MeasureLike,
    eps: float,
    max_iter: int = SINKHORN_MAX_ITER,
    stop_threshold: float = SINKHORN_STOP_THRESHOLD,
) -> SinkhornResult:
    r"""엔트로피 정규화를 이용한 W1 근사값.

    로그 영역 Sinkhorn 반복으로 수송 계획을 구한 뒤, 주변분포가 정확히 맞도록 계획을
    반올림하고 그 비용을 반환한다. 반올림한 계획은 실제로 가능한 수송 계획이므로 값은
    항상 정확한 W1 이상이며, 수렴했을 때 편향은 대략 ``eps * log N`` 이하이다.
    두 측도의 원자 수는 달라도 된다.

    Parameters
    ----------
    a, b : EmpiricalMeasure, PhaseMeasure or array-like
        차원이 같은 측도
    eps : float(positive)
        정규화 세기
    max_iter : int : optional
        최대 반복 횟수. 기본값은 10000이다.
    stop_threshold : float : optional
        주변분포 오차의 정지 기준. 기본값은 1e-9이다.

    Returns
    -------
    result : SinkhornResult
        반복 상한 안에 수렴하지 못하면 ``converged=False``\와 마지막 주변분포 오차를 담는다.
    """
    if eps <= 0:
        raise ValueError("`eps` must be positive value.")
    a_atoms, b_atoms = atoms_of(a), atoms_of(b)
    if a_atoms.shape[1] != b_atoms.shape[1]:
        raise ValueError("Measures must have the same dimension.")
    a_weights = np.full(a_atoms.shape[0], 1.0 / a_atoms.shape[0])
    b_weights = np.full(b_atoms.shape[0], 1.0 / b_atoms.shape[0])
    cost = cdist(a_atoms, b_atoms)
    plan, log = ot.sinkhorn(
        a_weights,
        b_weights,
        cost,
        eps,
        method="sinkhorn_log",
        numItermax=max_iter,
        stopThr=stop_threshold,
        log=True,
        warn=False,
    )
    marginal_error = float(log["err"][-1]) if log["err"] else float("inf")
    converged = marginal_error < stop_threshold
    if not converged:
        logger.warning(
            "Sinkhorn did not converge: marginal error %.3e after %d iterations", marginal_error, log["niter"]
        )
    rounded = _round_to_marginals(np.asarray(plan), a_weights, b_weights)
    return SinkhornResult(float((rounded * cost).sum()), converged, marginal_error, int(log["niter"]) + 1)


def w1_between(
    a: MeasureLike,
    b: MeasureLike,
    eps: float = 1e-3,
    method: Literal["auto", "sinkhorn"] = "auto",
    cap: int = ASSIGNMENT_CAP,
) -> DistanceResult:
    r"""원자 수가 다를 수도 있는 두 경험측도 사이의 W1 거리.

    ``method="auto"``\일 때 한쪽 원자 수가 다른 쪽의 배수이면 적은 쪽 원자를 복제해
    원자 수를 맞추고 정확한 할당 문제를 푼다. 원자를 복제해도 측도는 변하지 않으므로 이 값은
    정확하다. 그렇지 않으면 :func:`w1_sinkhorn`\을 쓰고 결과에 근사값임을 표시한다.

    Returns
    -------
    result : DistanceResult
        값, 사용한 방법, 근사값인지 여부
    """
    a_atoms, b_atoms = atoms_of(a), atoms_of(b)
    if method not in ("auto", "sinkhorn"):
        raise ValueError(f"Unknown method: {method}")
    if method == "auto":
        n_small, n_large = sorted((a_atoms.shape[0], b_atoms.shape[0]))
        if n_large % n_small == 0 and n_large <= cap:
            if a_atoms.shape[0] == b_atoms.shape[0]:
                return DistanceResult(w1_exact_assignment(a_atoms, b_atoms, cap), "exact", False)
            factor = n_large // n_small
            if a_atoms.shape[0] < b_atoms.shape[0]:
                a_atoms = np.repeat(a_atoms, factor, axis=0)
            else:
                b_atoms = np.repeat(b_atoms, factor, axis=0)
            return DistanceResult(w1_exact_assignment(a_atoms, b_atoms, cap), "replicated", False)
    result = w1_sinkhorn(a_atoms, b_atoms, eps)
    return DistanceResult(result.value, "sinkhorn", True)


__all__ = [
    "ASSIGNMENT_CAP",
    "DistanceResult",
    "SinkhornResult",
    "w1_between",
    "w1_exact_1d",
    "w1_exact_assignment",
    "w1_sinkhorn",
]
