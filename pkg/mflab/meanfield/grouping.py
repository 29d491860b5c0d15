"""원자 묶기: 겹치는 원자끼리, 같은 정육면체 칸에 든 원자끼리"""
import itertools
from typing import Dict, List, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

COINCIDENCE_TOLERANCE = 1e-12

BinKey = Tuple[int, ...]


def group_coincident(atoms: ArrayLike, tol: float = COINCIDENCE_TOLERANCE) -> List[np.ndarray]:
    r"""좌표가 겹치는 원자들의 인덱스를 묶는다.

    두 원자의 좌표 차이가 성분별로 ``tol`` 이하이면 같은 묶음에 들어간다. 이 관계로 이어진 원자들은
    모두 한 묶음이다. 겹치지 않는 원자는 혼자서 한 묶음을 이룬다.

    Parameters
    ----------
    atoms : array-like, shape (N, D)
    tol : float : optional

    Returns
    -------
    groups : list of ndarray
        묶음별 원자 인덱스. 각 묶음의 인덱스는 오름차순이고, 묶음들은 첫 인덱스 순으로 정렬된다.

    Examples
    --------
    >>> [g.tolist() for g in group_coincident([[0.0], [1.0], [0.0]])]
    [[0, 2], [1]]
    """
    atoms = np.asarray(atoms, dtype=float)
    if atoms.ndim == 1:
        atoms = atoms[:, np.newaxis]
    n = atoms.shape[0]
    pairs = np.asarray(cKDTree(atoms).query_pairs(tol, p=np.inf, output_type="ndarray"), dtype=int).reshape(-1, 2)
    graph = coo_matrix((np.ones(pairs.shape[0]), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    count, labels = connected_components(graph, directed=False)
    groups = [np.flatnonzero(labels == c) for c in range(count)]
    return sorted(groups, key=lambda g: g[0])


def cube_keys(x: ArrayLike, width: float, offset: float = 0.0) -> List[BinKey]:
    r"""각 원자가 들어가는 칸 ``[offset + n width, offset + (n + 1) width)^d``\의 정수 좌표 ``n``"""
    if width <= 0:
        raise ValueError("`width` must be positive value.")
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, np.newaxis]
    return [tuple(row) for row in np.floor((x - offset) / width).astype(np.int64).tolist()]


def group_by_cube(x: ArrayLike, width: float, offset: float = 0.0) -> Dict[BinKey, np.ndarray]:
    r"""원자들을 한 변이 ``width``\인 정육면체 칸으로 나눈다.

    각 좌표축에서 구간 ``[offset + n width, offset + (n + 1) width)``\에 드는 원자는 ``n``\이 같다.
    원자가 없는 칸은 결과에 없다.

    Parameters
    ----------
    x : array-like, shape (N, d)
    width : float
        칸의 한 변 길이
    offset : float : optional
        칸의 시작 지점

    Returns
    -------
    bins : dict
        칸 좌표 ``(n_1, ..., n_d)``\를 키로, 그 칸에 든 원자 인덱스(오름차순)를 값으로 하는 딕셔너리

    Examples
    --------
    >>> for key, members in group_by_cube([0.01, -0.3, 0.04, 0.26], 0.05).items():
    ...     print(key, members.tolist())
    (-6,) [1]
    (0,) [0, 2]
    (5,) [3]
    """
    keys = cube_keys(x, width, offset)
    order = sorted(range(len(keys)), key=keys.__getitem__)
    return {key: np.array(list(members)) for (key, members) in itertools.groupby(order, key=keys.__getitem__)}


__all__ = ["BinKey", "COINCIDENCE_TOLERANCE", "cube_keys", "group_by_cube", "group_coincident"]
