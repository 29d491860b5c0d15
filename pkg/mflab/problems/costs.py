r"""측도에 대한 비용 함수 (실행 비용 ``L``\과 종단 비용 ``g``)

쌍별 형태 ``F(psi) = ∬ f(x - y) dpsi(x) dpsi(y)`` (``f``\는 우함수)만 다룬다.
Wasserstein 미분은 ``nabla_psi F(psi)(x_tilde) = 2 ∫ f'(x_tilde - y) dpsi(y)``\이다.
"""
import numpy as np


class ZeroCost:
    def value(self, atoms: np.ndarray) -> float:
        return 0.0

    def grad_psi(self, atoms: np.ndarray, x_tilde: np.ndarray) -> np.ndarray:
        return np.zeros_like(x_tilde, dtype=float)

    def __repr__(self) -> str:
        return "ZeroCost()"


class PairwiseCost:
    """쌍별 비용의 기반 클래스. 하위 클래스는 ``profile``\\과 ``profile_grad``\\를 구현한다."""

    def profile(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def profile_grad(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def value(self, atoms: np.ndarray) -> float:
        diff = atoms[:, np.newaxis, :] - atoms[np.newaxis, :, :]
        return float(np.mean(self.profile(diff)))

    def grad_psi(self, atoms: np.ndarray, x_tilde: np.ndarray) -> np.ndarray:
        diff = x_tilde[:, np.newaxis, :] - atoms[np.newaxis, :, :]
        return 2.0 * np.mean(self.profile_grad(diff), axis=1)


class QuadraticSpread(PairwiseCost):
    r"""``f(z) = (weight / 2) |z|^2``. 값은 ``weight * Var(psi)``\이다."""

    def __init__(self, weight: float = 1.0):
        self.weight = float(weight)

    def profile(self, z: np.ndarray) -> np.ndarray:
        return 0.5 * self.weight * np.sum(z * z, axis=-1)

    def profile_grad(self, z: np.ndarray) -> np.ndarray:
        return self.weight * z

    def __repr__(self) -> str:
        return f"QuadraticSpread(weight={self.weight})"


class GaussianAttraction(PairwiseCost):
    r"""``f(z) = weight (1 - exp(-|z|^2 / width^2))``"""

    def __init__(self, weight: float = 1.0, width: float = 1.0):
        if width <= 0:
            raise ValueError("`width` must be positive value.")
        self.weight = float(weight)
        self.width = float(width)

    def profile(self, z: np.ndarray) -> np.ndarray:
        return self.weight * (1.0 - np.exp(-np.sum(z * z, axis=-1) / self.width**2))

    def profile_grad(self, z: np.ndarray) -> np.ndarray:
        decay = np.exp(-np.sum(z * z, axis=-1) / self.width**2)
        return (2.0 * self.weight / self.width**2) * z * decay[..., np.newaxis]

    def __repr__(self) -> str:
        return f"GaussianAttraction(weight={self.weight}, width={self.width})"


class NegativeVariance(PairwiseCost):
    r"""분산을 키우는 쪽이 이득인 비용 ``-(weight / 2) Var(psi)``, 즉 ``f(z) = -(weight / 4)|z|^2``.

    ``nabla_psi F(psi)(x_tilde) = -weight (x_tilde - mean(psi))``

    Examples
    --------
    >>> float(NegativeVariance().value(np.array([[-1.0], [1.0]])))
    -0.5
    """

    def __init__(self, weight: float = 1.0):
        self.weight = float(weight)

    def profile(self, z: np.ndarray) -> np.ndarray:
        return -0.25 * self.weight * np.sum(z * z, axis=-1)

    def profile_grad(self, z: np.ndarray) -> np.ndarray:
        return -0.5 * self.weight * z

    def __repr__(self) -> str:
        return f"NegativeVariance(weight={self.weight})"


__all__ = ["GaussianAttraction", "NegativeVariance", "PairwiseCost", "QuadraticSpread", "ZeroCost"]
