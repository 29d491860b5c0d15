from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike


def _as_atoms(atoms: ArrayLike) -> np.ndarray:
    """원자 좌표를 ``(N, d)`` 모양의 읽기 전용 float 배열로 바꾼다. 스칼라들의 1차원 배열은 d=1로 본다."""
    array = np.array(atoms, dtype=float)
    if array.ndim == 1:
        array = array[:, np.newaxis]
    if array.ndim != 2:
        raise ValueError("`atoms` must be a sequence of points.")
    if array.shape[0] < 1:
        raise ValueError("`atoms` must contain at least one point.")
    array.flags.writeable = False
    return array


class EmpiricalMeasure:
    r"""같은 무게 ``1/N``\을 갖는 ``N``\개의 원자로 이루어진 확률측도.

    무게는 저장하지 않으며 전체 질량은 항상 1이다.

    Parameters
    ----------
    atoms : array-like, shape (N, d) or (N,)
        원자의 좌표. 1차원 배열이면 d=1로 본다.

    Examples
    --------
    >>> m = EmpiricalMeasure([-1.0, 1.0])
    >>> m.size, m.dim
    (2, 1)
    >>> float(m.mean()[0])
    0.0
    """

    def __init__(self, atoms: ArrayLike):
        self._atoms = _as_atoms(atoms)

    @property
    def atoms(self) -> np.ndarray:
        """원자 좌표, 모양은 ``(N, d)``. 읽기 전용"""
        return self._atoms

    @property
    def size(self) -> int:
        return self._atoms.shape[0]

    @property
    def dim(self) -> int:
        return self._atoms.shape[1]

    def mean(self) -> np.ndarray:
        """무게중심"""
        return self._atoms.mean(axis=0)

    def first_moment(self) -> float:
        """1차 모멘트 ``m1 = (1/N) sum |x_i|``"""
        return float(np.linalg.norm(self._atoms, axis=1).mean())

    def permuted(self, order: ArrayLike) -> "EmpiricalMeasure":
        return EmpiricalMeasure(self._atoms[np.asarray(order)])

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"EmpiricalMeasure(size={self.size}, dim={self.dim})"


class PhaseMeasure:
    r"""상태-공상태 공간 ``R^{2d}``\의 경험측도. 각 원자는 ``(x_i, r_i)``\로 나뉜다.

    :param x: 상태 좌표, 모양 ``(N, d)``
    :param r: 공상태 좌표, 모양 ``(N, d)``
    """

    def __init__(self, x: ArrayLike, r: ArrayLike):
        x_atoms = _as_atoms(x)
        r_atoms = _as_atoms(r)
        if x_atoms.shape != r_atoms.shape:
            raise ValueError("`x` and `r` must have the same shape.")
        atoms = np.hstack([x_atoms, r_atoms])
        atoms.flags.writeable = False
        self._atoms = atoms
        self._dim = x_atoms.shape[1]

    @property
    def atoms(self) -> np.ndarray:
        """``(N, 2d)`` 모양의 원자 좌표"""
        return self._atoms

    @property
    def x(self) -> np.ndarray:
        return self._atoms[:, : self._dim]

    @property
    def r(self) -> np.ndarray:
        return self._atoms[:, self._dim :]

    @property
    def size(self) -> int:
        return self._atoms.shape[0]

    @property
    def dim(self) -> int:
        """상태 공간의 차원 d (원자 좌표의 차원은 2d)"""
        return self._dim

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"PhaseMeasure(size={self.size}, dim={self.dim})"


class VectorMeasure:
    r"""각 원자에 벡터 ``u_i``\가 실린 경험측도.

    ``base``\가 :class:`PhaseMeasure`\이면 ``rho``, :class:`EmpiricalMeasure`\이면 ``mu``\에 해당한다.

    Parameters
    ----------
    base : PhaseMeasure or EmpiricalMeasure
        원자들이 놓인 측도
    payload : array-like, shape (N, d)
        원자별 벡터
    """

    def __init__(self, base: Union[PhaseMeasure, EmpiricalMeasure], payload: ArrayLike):
        payload_array = _as_atoms(payload)
        if payload_array.shape[0] != base.size:
            raise ValueError("`payload` length must equal the atom count of `base`.")
        self._base = base
        self._payload = payload_array

    @property
    def base(self) -> Union[PhaseMeasure, EmpiricalMeasure]:
        return self._base

    @property
    def payload(self) -> np.ndarray:
        return self._payload

    @property
    def size(self) -> int:
        return self._base.size

    def __len__(self) -> int:
        return self.size


AnyMeasure = Union[EmpiricalMeasure, PhaseMeasure]


def atoms_of(m: Union[AnyMeasure, VectorMeasure, ArrayLike]) -> np.ndarray:
    """측도에서 원자 좌표를 꺼낸다. 배열이 들어오면 그대로 ``(N, d)``\\로 바꿔서 반환한다."""
    if isinstance(m, VectorMeasure):
        return m.base.atoms
    if isinstance(m, (EmpiricalMeasure, PhaseMeasure)):
        return m.atoms
    return _as_atoms(m)


def support_radius(m: Union[AnyMeasure, ArrayLike]) -> float:
    """원자들의 유클리드 노름의 최댓값"""
    return float(np.linalg.norm(atoms_of(m), axis=1).max())


def push_x(m: PhaseMeasure) -> EmpiricalMeasure:
    """상태-공상태 측도를 상태 좌표로 사영한다. 원자의 순서와 개수는 그대로 유지된다."""
    return EmpiricalMeasure(m.x)


def phase_to_vector(m: PhaseMeasure, payload: ArrayLike, base: Optional[str] = None) -> VectorMeasure:
    r"""``m``\에 ``payload``\를 싣는다. ``base="x"``\이면 상태 사영 위에 싣는다(``mu``)."""
    if base == "x":
        return VectorMeasure(push_x(m), payload)
    return VectorMeasure(m, payload)


__all__ = [
    "AnyMeasure",
    "EmpiricalMeasure",
    "PhaseMeasure",
    "VectorMeasure",
    "atoms_of",
    "phase_to_vector",
    "push_x",
    "support_radius",
]
