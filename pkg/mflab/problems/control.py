"""허용 제어 집합 ``K``\\와 제어 비용 ``phi``"""
import itertools
from typing import Union

import numpy as np
from numpy.typing import ArrayLike


class BoxControlSet:
    r"""상자 ``[-M, M]^d``.

    :param bound: 상자의 반폭 ``M`` (양수)
    :param dim: 차원 ``d``
    """

    kind = "box"

    def __init__(self, bound: float, dim: int = 1):
        if bound <= 0:
            raise ValueError("`bound` must be positive value.")
        if dim < 1:
            raise ValueError("`dim` must be positive value.")
        self._bound = float(bound)
        self._dim = int(dim)

    @property
    def bound(self) -> float:
        return self._bound

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def max_norm(self) -> float:
        """``K``\\에 속한 점의 최대 노름"""
        return self._bound * np.sqrt(self._dim)

    def project(self, u: ArrayLike) -> np.ndarray:
        return np.clip(np.asarray(u, dtype=float), -self._bound, self._bound)

    def contains(self, u: ArrayLike, atol: float = 1e-12) -> np.ndarray:
        """마지막 축을 점의 좌표로 보고 각 점이 ``K``\\에 속하는지 반환한다."""
        return np.all(np.abs(np.asarray(u, dtype=float)) <= self._bound + atol, axis=-1)

    def mesh(self, m: int) -> np.ndarray:
        """각 축을 ``m``\\개의 등간격 점으로 나눈 격자. 모양은 ``(m**d, d)``\\이고 사전순으로 정렬되어 있다."""
        if m < 1:
            raise ValueError("`m` must be positive value.")
        axis = np.linspace(-self._bound, self._bound, m) if m > 1 else np.zeros(1)
        return np.array(list(itertools.product(axis, repeat=self._dim)), dtype=float)

    def __repr__(self) -> str:
        return f"BoxControlSet(bound={self._bound}, dim={self._dim})"


class BallControlSet(BoxControlSet):
    r"""반지름 ``M``\인 닫힌 공."""

    kind = "ball"

    @property
    def max_norm(self) -> float:
        return self._bound

    def project(self, u: ArrayLike) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        norms = np.linalg.norm(u, axis=-1, keepdims=True)
        scale = np.minimum(1.0, self._bound / np.maximum(norms, np.finfo(float).tiny))
        return u * scale

    def contains(self, u: ArrayLike, atol: float = 1e-12) -> np.ndarray:
        return np.linalg.norm(np.asarray(u, dtype=float), axis=-1) <= self._bound + atol

    def mesh(self, m: int) -> np.ndarray:
        """상자 격자 중에서 공 안에 있는 점들"""
        box_mesh = super().mesh(m)
        return box_mesh[self.contains(box_mesh)]

    def __repr__(self) -> str:
        return f"BallControlSet(radius={self._bound}, dim={self._dim})"


ControlSet = Union[BoxControlSet, BallControlSet]


class QuadraticControlCost:
    r"""제어 비용 ``phi(u) = (weight / 2) |u|^2``.

    ``phi(0) = 0``\이고 강볼록이다. ``<s, u> - phi(u)``\의 ``K`` 위에서의 최댓점은
    ``s / weight``\를 ``K``\에 사영한 점이며 유일하다.
    """

    def __init__(self, weight: float):
        if weight <= 0:
            raise ValueError("`weight` must be positive value.")
        self._weight = float(weight)

    @property
    def weight(self) -> float:
        return self._weight

    def value(self, u: ArrayLike) -> np.ndarray:
        """마지막 축을 제어 벡터로 보고 ``phi``\\를 계산한다."""
        u = np.asarray(u, dtype=float)
        return 0.5 * self._weight * np.sum(u * u, axis=-1)

    def gradient(self, u: ArrayLike) -> np.ndarray:
        return self._weight * np.asarray(u, dtype=float)

    def argmax(self, s: ArrayLike, control_set: ControlSet) -> np.ndarray:
        r"""``argmax_{u in K} <s, u> - phi(u)``"""
        return control_set.project(np.asarray(s, dtype=float) / self._weight)

    def __repr__(self) -> str:
        return f"QuadraticControlCost(weight={self._weight})"


__all__ = ["BallControlSet", "BoxControlSet", "ControlSet", "QuadraticControlCost"]
