r"""입자계의 속도장 ``v(x, psi)``\와 활성화 함수 ``h(x, psi)``

모든 메서드는 평가점 ``x``\(모양 ``(M, d)``)와 경험측도의 원자 ``atoms``\(모양 ``(N, d)``)를 받아서
한꺼번에 계산한다. ``grad_psi``\는 측도에 대한 Wasserstein 미분 ``nabla_psi F(x, psi)(x_tilde)``\이며
경험측도에서는 ``N * d F / d x_tilde``\과 같다.
"""
import numpy as np


def _pairwise_differences(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # diff[m, k] = y[k] - x[m]
    return y[np.newaxis, :, :] - x[:, np.newaxis, :]


class ZeroVelocity:
    """``v = 0``"""

    growth_constant = 0.0

    def value(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        return np.zeros_like(x, dtype=float)

    def grad_x(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        m, d = x.shape
        return np.zeros((m, d, d))

    def grad_psi(self, x: np.ndarray, atoms: np.ndarray, x_tilde: np.ndarray) -> np.ndarray:
        m, d = x.shape
        return np.zeros((m, x_tilde.shape[0], d, d))

    def __repr__(self) -> str:
        return "ZeroVelocity()"


class KernelVelocity:
    r"""국소항과 상호작용 핵으로 이루어진 속도장.

    ``v(x, psi) = -c x + (1/N) sum_j W(x, x_j)``\이며, 상호작용 핵은
    ``W(x, y) = kappa (y - x) (1 + |y - x|^2)^(-beta)``\이다. ``beta = 0``\이면 선형 정렬 핵이고
    ``beta > 0``\이면 거리에 따라 약해지는 통신 가중치가 붙는다.

    ``|v(x, psi)| <= (c + kappa)(1 + |x| + m1(psi))``\이 성립한다.

    Parameters
    ----------
    kappa : float
        상호작용 세기
    beta : float(non-negative) : optional
        통신 가중치의 감쇠 지수. 기본값은 0이다.
    confinement : float(non-negative) : optional
        국소항 ``-c x``\의 계수 ``c``. 기본값은 0이다.
    """

    def __init__(self, kappa: float, beta: float = 0.0, confinement: float = 0.0):
        if beta < 0:
            raise ValueError("`beta` must be non-negative value.")
        if confinement < 0:
            raise ValueError("`confinement` must be non-negative value.")
        self.kappa = float(kappa)
        self.beta = float(beta)
        self.confinement = float(confinement)

    @property
    def growth_constant(self) -> float:
        return self.confinement + abs(self.kappa)

    def _weights(self, squared: np.ndarray):
        # a(s) = (1 + s)^(-beta) 와 그 도함수
        weight = (1.0 + squared) ** (-self.beta)
        weight_prime = -self.beta * (1.0 + squared) ** (-self.beta - 1.0)
        return weight, weight_prime

    def kernel_grad_y(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r"""``nabla_2 W(x_m, y_k)``, 모양 ``(M, K, d, d)``. ``nabla_1 W = -nabla_2 W``\이다."""
        diff = _pairwise_differences(x, y)
        weight, weight_prime = self._weights(np.sum(diff * diff, axis=-1))
        d = x.shape[1]
        outer = diff[..., :, np.newaxis] * diff[..., np.newaxis, :]
        return self.kappa * (
            weight[..., np.newaxis, np.newaxis] * np.eye(d) + 2.0 * weight_prime[..., np.newaxis, np.newaxis] * outer
        )

    def value(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        diff = _pairwise_differences(x, atoms)
        weight, _ = self._weights(np.sum(diff * diff, axis=-1))
        interaction = self.kappa * np.mean(diff * weight[..., np.newaxis], axis=1)
        return interaction - self.confinement * x

    def grad_x(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        d = x.shape[1]
        return -np.mean(self.kernel_grad_y(x, atoms), axis=1) - self.confinement * np.eye(d)

    def grad_psi(self, x: np.ndarray, atoms: np.ndarray, x_tilde: np.ndarray) -> np.ndarray:
        return self.kernel_grad_y(x, x_tilde)

    def __repr__(self) -> str:
        return f"KernelVelocity(kappa={self.kappa}, beta={self.beta}, confinement={self.confinement})"


class ConstantActivation:
    """``h = level``"""

    def __init__(self, level: float = 1.0):
        self.level = float(level)

    @property
    def bound(self) -> float:
        return abs(self.level)

    def value(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        return np.full(x.shape[0], self.level)

    def grad_x(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        return np.zeros_like(x, dtype=float)

    def grad_psi(self, x: np.ndarray, atoms: np.ndarray, x_tilde: np.ndarray) -> np.ndarray:
        return np.zeros((x.shape[0], x_tilde.shape[0], x.shape[1]))

    def __repr__(self) -> str:
        return f"ConstantActivation(level={self.level})"


class BumpActivation:
    r"""선택적 활성화 ``h(x, psi) = 1 / (1 + |x - m|^2 / width^2)``.

    ``centered=True``\이면 중심 ``m``\은 ``psi``\의 무게중심이고, 아니면 원점이다.
    무게중심을 쓰면 ``nabla_psi h(x, psi)(x_tilde) = 2 (x - m) h^2 / width^2``\로
    ``x_tilde``\에 의존하지 않는다.
    """

    bound = 1.0

    def __init__(self, width: float = 1.0, centered: bool = False):
        if width <= 0:
            raise ValueError("`width` must be positive value.")
        self.width = float(width)
        self.centered = bool(centered)

    def _offset(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        if self.centered:
            return x - atoms.mean(axis=0)
        return np.asarray(x, dtype=float)

    def value(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        offset = self._offset(x, atoms)
        return 1.0 / (1.0 + np.sum(offset * offset, axis=-1) / self.width**2)

    def grad_x(self, x: np.ndarray, atoms: np.ndarray) -> np.ndarray:
        offset = self._offset(x, atoms)
        h = self.value(x, atoms)
        return -2.0 * offset * (h * h)[:, np.newaxis] / self.width**2

    def grad_psi(self, x: np.ndarray, atoms: np.ndarray, x_tilde: np.ndarray) -> np.ndarray:
        m, d = x.shape
        if not self.centered:
            return np.zeros((m, x_tilde.shape[0], d))
        per_point = -self.grad_x(x, atoms)
        return np.broadcast_to(per_point[:, np.newaxis, :], (m, x_tilde.shape[0], d)).copy()

    def __repr__(self) -> str:
        return f"BumpActivation(width={self.width}, centered={self.centered})"


__all__ = ["BumpActivation", "ConstantActivation", "KernelVelocity", "ZeroVelocity"]
