r"""여러 집단(라벨)을 갖는 입자의 라벨 동역학

각 입자의 상태는 위치 ``x``\와 라벨 ``lambda``\(길이 ``n``\의 음이 아닌 벡터)의 쌍이다.
라벨은 제어를 받지 않는다.

- :class:`MarkovLabelField`: 마르코프 연쇄 ``d lambda / dt = Q(x, psi) lambda``. 라벨은 단체 위에 있다.
- :class:`EntropicLabelField`: 엔트로피로 정규화한 복제자 동역학 ``S + eps R``.
  라벨은 ``r <= lambda <= R``, ``sum lambda eta = 1``\을 만족한다.
"""
from typing import NamedTuple, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..measures import EmpiricalMeasure

LABEL_TOLERANCE = 1e-6


class ReplicatorState(NamedTuple):
    position: np.ndarray  # 모양 (d,)
    label: np.ndarray  # 모양 (n,)


def _gaussian_kernel_mean(x: np.ndarray, positions: np.ndarray, width: float) -> np.ndarray:
    # (1/N) sum_j exp(-|x_m - x_j|^2 / width^2), 모양 (M,)
    diff = x[:, np.newaxis, :] - positions[np.newaxis, :, :]
    return np.mean(np.exp(-np.sum(diff * diff, axis=-1) / width**2), axis=1)


class MarkovLabelField:
    r"""마르코프 연쇄 라벨 동역학.

    전이율 행렬은 ``Q(x, psi) = Q_base * (1 + coupling * (1/N) sum_j exp(-|x - x_j|^2))``\이다.
    ``Q_base``\는 비대각 성분이 음이 아니고 각 열의 합이 0이어야 한다.

    :param rates: 기본 전이율 행렬 ``Q_base``, 모양 ``(n, n)``
    :param coupling: 주변 입자 밀도에 따른 전이율 증폭 계수 (음이 아닌 값)
    :param initial_label: 초기 라벨. 없으면 디리클레 분포에서 뽑는다.
    """

    variant = "markov"

    def __init__(self, rates: ArrayLike, coupling: float = 0.0, initial_label: Optional[ArrayLike] = None):
        rates = np.array(rates, dtype=float)
        if rates.ndim != 2 or rates.shape[0] != rates.shape[1]:
            raise ValueError("`rates` must be a square matrix.")
        off_diagonal = rates - np.diag(np.diag(rates))
        if np.any(off_diagonal < 0):
            raise ValueError("`rates` must have non-negative off-diagonal entries.")
        if not np.allclose(rates.sum(axis=0), 0.0, atol=1e-12):
            raise ValueError("Each column of `rates` must sum to zero.")
        if coupling < 0:
            raise ValueError("`coupling` must be non-negative value.")
        self.rates = rates
        self.coupling = float(coupling)
        self.initial_label = None if initial_label is None else np.array(initial_label, dtype=float)
        if self.initial_label is not None and self.invariant_violation(self.initial_label) > LABEL_TOLERANCE:
            raise ValueError("`initial_label` must lie on the simplex.")

    @property
    def size(self) -> int:
        return self.rates.shape[0]

    def generator(self, x: np.ndarray, positions: np.ndarray) -> np.ndarray:
        """평가점별 전이율 행렬, 모양 ``(M, n, n)``"""
        scale = 1.0 + self.coupling * _gaussian_kernel_mean(x, positions, 1.0)
        return scale[:, np.newaxis, np.newaxis] * self.rates

    def velocity(self, x: np.ndarray, labels: np.ndarray, positions: np.ndarray) -> np.ndarray:
        return np.einsum("mij,mj->mi", self.generator(x, positions), labels)

    def conserved(self, labels: np.ndarray) -> np.ndarray:
        return np.sum(labels, axis=-1)

    def invariant_violation(self, labels: ArrayLike) -> float:
        labels = np.asarray(labels, dtype=float)
        mass_error = np.max(np.abs(self.conserved(labels) - 1.0))
        negativity = np.max(np.maximum(-labels, 0.0))
        return float(max(mass_error, negativity))

    def normalize(self, labels: np.ndarray) -> np.ndarray:
        clipped = np.maximum(labels, 0.0)
        return clipped / clipped.sum(axis=-1, keepdims=True)

    def stationary_distribution(self) -> np.ndarray:
        """``Q_base pi = 0``\\인 확률 벡터"""
        eigenvalues, eigenvectors = np.linalg.eig(self.rates)
        vector = np.real(eigenvectors[:, np.argmin(np.abs(eigenvalues))])
        return vector / vector.sum()

    def is_reversible(self, atol: float = 1e-10) -> bool:
        """상세 균형 조건 ``Q_ij pi_j = Q_ji pi_i``\\이 성립하는지 여부"""
        pi = self.stationary_distribution()
        flux = self.rates * pi[np.newaxis, :]
        return bool(np.allclose(flux, flux.T, atol=atol))

    def sample(self, n_particles: int, rng: np.random.Generator) -> np.ndarray:
        if self.initial_label is not None:
            return np.tile(self.initial_label, (n_particles, 1))
        return rng.dirichlet(np.ones(self.size), size=n_particles)


class EntropicLabelField:
    r"""엔트로피로 정규화한 복제자 동역학.

    라벨 ``u``\의 보수는 ``f(x, u) = payoff_u * (1/N) sum_j exp(-|x - x_j|^2 / width^2)``\이다
    (``width``\가 없으면 ``payoff_u``). 속도는

    ``S(u) = (f(x, u) - sum_u' f(x, u') lambda(u') eta(u')) lambda(u)``

    ``R(u) = (sum_u' lambda(u') log lambda(u') eta(u') - log lambda(u)) lambda(u)``

    ``T = S + epsilon R``

    이고 ``sum_u T(u) eta(u) = 0``\이 성립하므로 ``sum lambda eta``\가 보존된다.

    Parameters
    ----------
    payoffs : array-like, shape (n,)
        라벨별 보수 계수
    reference : array-like, shape (n,) : optional
        양수 기준 무게 ``eta``. 기본값은 균등 ``1/n``\이다.
    epsilon : float : optional
        엔트로피 항의 세기. 기본값은 0.1이다.
    width : float or None : optional
        보수 핵의 폭. None이면 보수는 위치와 무관하다.
    lower, upper : float : optional
        라벨의 하한 ``r``\과 상한 ``R``
    initial_label : array-like : optional
        초기 라벨. 없으면 무작위로 뽑는다.
    """

    variant = "entropic"

    def __init__(
        self,
        payoffs: ArrayLike,
        reference: Optional[ArrayLike] = None,
        epsilon: float = 0.1,
        width: Optional[float] = None,
        lower: float = 1e-3,
        upper: float = 1e3,
        initial_label: Optional[ArrayLike] = None,
    ):
        self.payoffs = np.array(payoffs, dtype=float)
        n = self.payoffs.shape[0]
        self.reference = np.full(n, 1.0 / n) if reference is None else np.array(reference, dtype=float)
        if self.reference.shape != (n,) or np.any(self.reference <= 0):
            raise ValueError("`reference` must be a positive vector matching `payoffs`.")
        if epsilon < 0:
            raise ValueError("`epsilon` must be non-negative value.")
        if width is not None and width <= 0:
            raise ValueError("`width` must be positive value.")
        if not 0 < lower < upper:
            raise ValueError("`lower` and `upper` must satisfy 0 < lower < upper.")
        self.epsilon = float(epsilon)
        self.width = None if width is None else float(width)
        self.lower = float(lower)
        self.upper = float(upper)
        self.initial_label = None if initial_label is None else np.array(initial_label, dtype=float)
        if self.initial_label is not None and self.invariant_violation(self.initial_label) > LABEL_TOLERANCE:
            raise ValueError("`initial_label` must satisfy the label bounds and normalisation.")

    @property
    def size(self) -> int:
        return self.payoffs.shape[0]

    def payoff(self, x: np.ndarray, positions: np.ndarray) -> np.ndarray:
        """평가점별 라벨 보수, 모양 ``(M, n)``"""
        if self.width is None:
            return np.tile(self.payoffs, (x.shape[0], 1))
        return _gaussian_kernel_mean(x, positions, self.width)[:, np.newaxis] * self.payoffs

    def selection(self, x: np.ndarray, labels: np.ndarray, positions: np.ndarray) -> np.ndarray:
        f = self.payoff(x, positions)
        average = np.sum(f * labels * self.reference, axis=-1, keepdims=True)
        return (f - average) * labels

    def regularization(self, labels: np.ndarray) -> np.ndarray:
        log_labels = np.log(labels)
        average = np.sum(labels * log_labels * self.reference, axis=-1, keepdims=True)
        return (average - log_labels) * labels

    def velocity(self, x: np.ndarray, labels: np.ndarray, positions: np.ndarray) -> np.ndarray:
        return self.selection(x, labels, positions) + self.epsilon * self.regularization(labels)

    def conserved(self, labels: np.ndarray) -> np.ndarray:
        return np.sum(labels * self.reference, axis=-1)

    def invariant_violation(self, labels: ArrayLike) -> float:
        labels = np.asarray(labels, dtype=float)
        mass_error = np.max(np.abs(self.conserved(labels) - 1.0))
        below = np.max(np.maximum(self.lower - labels, 0.0))
        above = np.max(np.maximum(labels - self.upper, 0.0))
        return float(max(mass_error, below, above))

    def normalize(self, labels: np.ndarray) -> np.ndarray:
        return labels / self.conserved(labels)[..., np.newaxis]

    def uniform_label(self) -> np.ndarray:
        """``sum lambda eta = 1``\\을 만족하는 상수 라벨"""
        return np.full(self.size, 1.0 / self.reference.sum())

    def entropy(self, labels: np.ndarray) -> np.ndarray:
        r"""``-sum lambda log lambda eta``. 보수가 상수이면 시간에 따라 증가한다."""
        return -np.sum(labels * np.log(labels) * self.reference, axis=-1)

    def sample(self, n_particles: int, rng: np.random.Generator) -> np.ndarray:
        if self.initial_label is not None:
            return np.tile(self.initial_label, (n_particles, 1))
        raw = self.uniform_label() * rng.uniform(0.5, 1.5, size=(n_particles, self.size))
        return self.normalize(raw)


def replicator_rhs(state: ReplicatorState, psi: EmpiricalMeasure, field) -> np.ndarray:
    r"""한 입자의 라벨 속도 ``T(c, psi)``\를 계산한다.

    Parameters
    ----------
    state : ReplicatorState
        입자의 위치와 라벨
    psi : EmpiricalMeasure
        ``C = R^d x labels`` 위의 경험측도. 원자는 ``(x_j, lambda_j)``\를 이어 붙인 것이며
        앞의 ``d``\개 좌표만 사용한다.
    field : MarkovLabelField or EntropicLabelField

    Returns
    -------
    velocity : ndarray, shape (n,)

    Exceptions
    ----------
    ValueError
        라벨이 허용 집합을 벗어났을 경우
    """
    position = np.atleast_1d(np.asarray(state.position, dtype=float))
    label = np.asarray(state.label, dtype=float)
    if field.invariant_violation(label) > LABEL_TOLERANCE:
        raise ValueError("`state.label` lies outside the label invariant set.")
    positions = psi.atoms[:, : position.shape[0]]
    return field.velocity(position[np.newaxis, :], label[np.newaxis, :], positions)[0]


__all__ = ["EntropicLabelField", "LABEL_TOLERANCE", "MarkovLabelField", "ReplicatorState", "replicator_rhs"]
