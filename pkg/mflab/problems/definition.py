"""문제 정의 ``(v, h, L, phi, K, Psi_0, T)``\\와 단일 점에서의 평가 함수들"""
from typing import Any, Dict, NamedTuple, Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from ..measures import EmpiricalMeasure
from .control import ControlSet, QuadraticControlCost
from .labels import EntropicLabelField, MarkovLabelField


class MidpointGrid:
    r"""``[-half_width, half_width]``\의 ``N``\등분 구간의 중점들 (1차원, 시드와 무관).

    ``x_i = -a + (2i - 1) a / N``\이며 원점에 대해 대칭이다.
    """

    def __init__(self, half_width: float = 1.0):
        self.half_width = float(half_width)

    @property
    def radius(self) -> float:
        return self.half_width

    def sample(self, n_particles: int, dim: int, rng: np.random.Generator) -> np.ndarray:
        if dim != 1:
            raise ValueError("`MidpointGrid` supports dimension 1 only.")
        index = np.arange(1, n_particles + 1)
        a = self.half_width
        return (-a + (2 * index - 1) * a / n_particles)[:, np.newaxis]

    def __repr__(self) -> str:
        return f"MidpointGrid(half_width={self.half_width})"


class UniformBox:
    """``[-half_width, half_width]^d``\\에서의 균등 표본"""

    def __init__(self, half_width: float = 1.0):
        self.half_width = float(half_width)

    @property
    def radius(self) -> float:
        return self.half_width

    def sample(self, n_particles: int, dim: int, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(-self.half_width, self.half_width, size=(n_particles, dim))

    def __repr__(self) -> str:
        return f"UniformBox(half_width={self.half_width})"


InitialSampler = Union[MidpointGrid, UniformBox]
LabelField = Union[MarkovLabelField, EntropicLabelField]


class ProblemSpec(NamedTuple):
    name: str
    dim: int
    horizon: float  # T
    control_set: ControlSet  # K
    control_cost: QuadraticControlCost  # phi
    velocity: Any  # v
    activation: Any  # h
    running_cost: Any  # L
    terminal_cost: Optional[Any]  # g, 없을 수 있다.
    initial: InitialSampler
    label_field: Optional[LabelField] = None
    params: Optional[Dict[str, Any]] = None


def _point(x: ArrayLike) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))[np.newaxis, :]


def eval_v(p: ProblemSpec, x: ArrayLike, psi: EmpiricalMeasure) -> np.ndarray:
    """점 ``x``\\에서의 속도 ``v(x, psi)``"""
    return p.velocity.value(_point(x), psi.atoms)[0]


def eval_grad_x_v(p: ProblemSpec, x: ArrayLike, psi: EmpiricalMeasure) -> np.ndarray:
    return p.velocity.grad_x(_point(x), psi.atoms)[0]


def eval_grad_psi_v(p: ProblemSpec, x: ArrayLike, psi: EmpiricalMeasure, x_tilde: ArrayLike) -> np.ndarray:
    return p.velocity.grad_psi(_point(x), psi.atoms, _point(x_tilde))[0, 0]


def eval_h(p: ProblemSpec, x: ArrayLike, psi: EmpiricalMeasure) -> float:
    return float(p.activation.value(_point(x), psi.atoms)[0])


def eval_grad_x_h(p: ProblemSpec, x: ArrayLike, psi: EmpiricalMeasure) -> np.ndarray:
    return p.activation.grad_x(_point(x), psi.atoms)[0]


def eval_grad_psi_h(p: ProblemSpec, x: ArrayLike, psi: EmpiricalMeasure, x_tilde: ArrayLike) -> np.ndarray:
    return p.activation.grad_psi(_point(x), psi.atoms, _point(x_tilde))[0, 0]


def eval_L(p: ProblemSpec, psi: EmpiricalMeasure) -> float:
    return float(p.running_cost.value(psi.atoms))


def eval_grad_psi_L(p: ProblemSpec, psi: EmpiricalMeasure, x_tilde: ArrayLike) -> np.ndarray:
    return p.running_cost.grad_psi(psi.atoms, _point(x_tilde))[0]


def eval_g(p: ProblemSpec, psi: EmpiricalMeasure) -> float:
    if p.terminal_cost is None:
        return 0.0
    return float(p.terminal_cost.value(psi.atoms))


def eval_grad_psi_g(p: ProblemSpec, psi: EmpiricalMeasure, x_tilde: ArrayLike) -> np.ndarray:
    if p.terminal_cost is None:
        return np.zeros(psi.dim)
    return p.terminal_cost.grad_psi(psi.atoms, _point(x_tilde))[0]


def eval_phi(p: ProblemSpec, u: ArrayLike) -> float:
    return float(p.control_cost.value(np.atleast_1d(np.asarray(u, dtype=float))))


def eval_phi_conjugate_argmax(p: ProblemSpec, r_scaled: ArrayLike) -> np.ndarray:
    r"""``argmax_{u in K} <r_scaled, u> - phi(u)``"""
    return p.control_cost.argmax(np.atleast_1d(np.asarray(r_scaled, dtype=float)), p.control_set)


def sample_initial(p: ProblemSpec, n_particles: int, seed: int) -> np.ndarray:
    """초기 입자 위치 ``(N, d)``. 같은 시드에 대해서는 항상 같은 값을 반환한다."""
    if n_particles < 1:
        raise ValueError("`n_particles` must be positive value.")
    rng = np.random.default_rng(seed)
    return p.initial.sample(n_particles, p.dim, rng)


def sample_labels(p: ProblemSpec, n_particles: int, seed: int) -> np.ndarray:
    """초기 라벨 ``(N, n)``. 라벨 동역학이 없는 문제에서는 ValueError를 일으킨다."""
    if p.label_field is None:
        raise ValueError(f"Problem `{p.name}` has no label dynamics.")
    # 위치 표본과 다른 난수열을 쓴다.
    rng = np.random.default_rng([seed, 1])
    return p.label_field.sample(n_particles, rng)


__all__ = [
    "InitialSampler",
    "LabelField",
    "MidpointGrid",
    "ProblemSpec",
    "UniformBox",
    "eval_L",
    "eval_g",
    "eval_grad_psi_L",
    "eval_grad_psi_g",
    "eval_grad_psi_h",
    "eval_grad_psi_v",
    "eval_grad_x_h",
    "eval_grad_x_v",
    "eval_h",
    "eval_phi",
    "eval_phi_conjugate_argmax",
    "eval_v",
    "sample_initial",
    "sample_labels",
]
