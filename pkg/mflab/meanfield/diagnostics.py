"""생성 측도에 대한 수치 진단"""
from typing import Dict, List, Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.spatial.distance import pdist

from ..measures import PhaseMeasure, VectorMeasure, w1_exact_assignment
from .generated import GeneratedPair
from .grouping import BinKey, cube_keys, group_by_cube

DEFAULT_RELATIVE_WIDTH = 0.05


def lipschitz_estimate(pair: GeneratedPair) -> float:
    r"""``max_k W1(nu(k+1), nu(k)) / dt``. 거리는 정확한 할당 문제로 계산한다."""
    grid = pair.grid
    return max(w1_exact_assignment(pair.nu(k + 1), pair.nu(k)) / grid.dt for k in range(grid.steps))


def _spread_score(x: np.ndarray, payload: np.ndarray, width: float) -> float:
    scored = [members for members in group_by_cube(x, width).values() if len(members) >= 2]
    if not scored:
        return 0.0
    spreads = [float(pdist(payload[members]).max()) for members in scored]
    return float(np.average(spreads, weights=[len(members) for members in scored]))


def r_independence_score(
    target: Union[GeneratedPair, VectorMeasure], width: float, k: Optional[int] = None
) -> float:
    r"""제어 밀도가 ``r``\에 의존하는 정도.

    원자들을 ``x`` 좌표로 한 변이 ``width``\인 칸에 나누고, 원자가 두 개 이상인 칸마다
    제어의 최대 쌍별 거리를 구한 다음 그 칸들의 질량으로 가중 평균한다. 원자가 하나뿐인 칸은
    분모에도 넣지 않으며, 그런 칸만 있으면 0이다. 값이 작으면 밀도가 ``(t, x)``\만의 함수라는
    수치적 근거가 된다.

    Parameters
    ----------
    target : GeneratedPair or VectorMeasure
        :class:`GeneratedPair`\이면 ``k``\가 주어지지 않았을 때 제어 노드 전체의 평균을 반환한다.
        :class:`VectorMeasure`\이면 그 측도 하나의 값을 반환한다.
    width : float
        칸의 한 변 길이 (양수)
    k : int : optional
        노드 번호

    Examples
    --------
    같은 위치에 제어 0과 2가 실리면 값은 2이다.

    >>> rho = VectorMeasure(PhaseMeasure([0.0, 0.0], [1.0, -1.0]), [0.0, 2.0])
    >>> r_independence_score(rho, 0.05)
    2.0
    """
    if width <= 0:
        raise ValueError("`width` must be positive value.")
    if isinstance(target, VectorMeasure):
        base = target.base
        x = base.x if isinstance(base, PhaseMeasure) else base.atoms
        return _spread_score(x, target.payload, width)
    nodes = range(target.grid.steps) if k is None else [k]
    return float(np.mean([_spread_score(target.states[j], target.controls[j], width) for j in nodes]))


def support_diameter(pair: GeneratedPair) -> float:
    """모든 노드의 상태 원자를 담는 직육면체의 대각선 길이"""
    x = pair.states.reshape(-1, pair.dim)
    return float(np.linalg.norm(np.ptp(x, axis=0)))


def default_bin_width(pair: GeneratedPair) -> float:
    """상태 지지 지름의 0.05배. 원자가 모두 한 점이면 1이다."""
    diameter = support_diameter(pair)
    return DEFAULT_RELATIVE_WIDTH * diameter if diameter > 0 else 1.0


class ControlField:
    r"""노드와 칸별로 상수인 제어장 ``w(t_k, x)``.

    각 칸의 값은 그 칸에 든 원자들의 제어 평균이다. 원자가 없는 칸에서는 값이 없으며 NaN을 반환한다.

    :param width: 칸의 한 변 길이
    :param means: 노드별로 칸 좌표에서 평균 제어로 가는 딕셔너리의 리스트
    :param dim: 제어의 차원
    """

    def __init__(self, width: float, means: List[Dict[BinKey, np.ndarray]], dim: int):
        self.width = float(width)
        self.means = means
        self.dim = int(dim)

    @property
    def steps(self) -> int:
        return len(self.means)

    def __call__(self, k: int, x: ArrayLike) -> np.ndarray:
        """노드 ``k``\\에서 위치 ``x`` (모양 ``(M, d)``)의 값"""
        table = self.means[k]
        missing = np.full(self.dim, np.nan)
        return np.array([table.get(key, missing) for key in cube_keys(x, self.width)]).reshape(-1, self.dim)

    def __repr__(self) -> str:
        return f"ControlField(width={self.width}, steps={self.steps}, dim={self.dim})"


def extract_control_field(pair: GeneratedPair, width: Optional[float] = None) -> ControlField:
    """제어 노드마다 칸별 평균 제어로 이루어진 :class:`ControlField`\\를 만든다.

    :param pair: 생성 측도
    :param width: 칸의 한 변 길이. 주어지지 않으면 :func:`default_bin_width`\\를 쓴다.
    """
    if width is None:
        width = default_bin_width(pair)
    elif width <= 0:
        raise ValueError("`width` must be positive value.")
    means = []
    for k in range(pair.grid.steps):
        u = pair.controls[k]
        means.append({key: u[members].mean(axis=0) for (key, members) in group_by_cube(pair.states[k], width).items()})
    return ControlField(width, means, pair.dim)


def control_lipschitz_estimate(x0: ArrayLike, u0: ArrayLike) -> float:
    r"""초기 제어 ``x_i(0) -> u_i(0)``\의 최대 차분 몫 ``max |u_i - u_j| / |x_i - x_j|``.

    위치가 같은 쌍은 건너뛴다. 원자가 하나뿐이면 0이다.

    Examples
    --------
    >>> control_lipschitz_estimate([-0.25, 0.25], [-1.0, 1.0])
    4.0
    """
    x0 = np.asarray(x0, dtype=float).reshape(len(x0), -1)
    u0 = np.asarray(u0, dtype=float).reshape(len(u0), -1)
    if x0.shape[0] < 2:
        return 0.0
    dx, du = pdist(x0), pdist(u0)
    separated = dx > 0
    if not np.any(separated):
        return 0.0
    return float(np.max(du[separated] / dx[separated]))


__all__ = [
    "ControlField",
    "DEFAULT_RELATIVE_WIDTH",
    "control_lipschitz_estimate",
    "default_bin_width",
    "extract_control_field",
    "lipschitz_estimate",
    "r_independence_score",
    "support_diameter",
]
