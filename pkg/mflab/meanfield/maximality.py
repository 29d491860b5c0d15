r"""극한 해밀토니안과 최대성 조건의 점검

극한 해밀토니안은 상태-공상태 측도 ``nu``\와 위치의 함수인 제어 ``omega``\에 대해

``H(nu, omega) = int <r, v(x, psi) + h(x, psi) omega(x)> d nu - L(psi) - int phi(omega(x)) d nu``

이며 ``psi``\는 ``nu``\의 상태 사영이다. 최적 제어장은 노드마다 이 값을 최대화해야 한다.
"""
from typing import Callable, List, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike

from ..measures import PhaseMeasure
from ..problems import ControlSet, ProblemSpec
from .diagnostics import ControlField
from .generated import GeneratedPair

TrialField = Callable[[int, np.ndarray], np.ndarray]


def limit_hamiltonian(
    p: ProblemSpec, nu: PhaseMeasure, omega: Union[Callable[[np.ndarray], np.ndarray], ArrayLike]
) -> float:
    r"""극한 해밀토니안 ``H(nu, omega)``\를 원자 평균으로 계산한다.

    Parameters
    ----------
    p : ProblemSpec
    nu : PhaseMeasure
    omega : callable or array-like
        위치 ``(N, d)``\를 받아 제어 ``(N, d)``\를 돌려주는 함수, 또는 원자별 제어 값

    Returns
    -------
    value : float

    Exceptions
    ----------
    ValueError
        ``omega``\의 값이 허용 제어 집합 밖에 있을 경우

    Examples
    --------
    >>> from mflab.problems import build_problem
    >>> model = build_problem("model_case", {"control_weight": 1.0})
    >>> limit_hamiltonian(model, PhaseMeasure([0.0], [2.0]), lambda x: np.ones_like(x))
    1.5
    """
    x, r = nu.x, nu.r
    values = omega(x) if callable(omega) else omega
    values = np.asarray(values, dtype=float).reshape(x.shape)
    if not np.all(p.control_set.contains(values, atol=1e-12)):
        raise ValueError("Values of `omega` must lie in the control set.")
    weight = 1.0 / nu.size
    transport = p.velocity.value(x, x) + p.activation.value(x, x)[:, np.newaxis] * values
    pairing = weight * np.einsum("ia,ia->", r, transport)
    control = weight * float(np.sum(p.control_cost.value(values)))
    return float(pairing - p.running_cost.value(x) - control)


def maximality_check(p: ProblemSpec, pair: GeneratedPair, field: ControlField, trials: Sequence[TrialField]) -> float:
    r"""노드와 시험 제어장 전체에서 ``H(nu(k), trial) - H(nu(k), field)``\의 최댓값.

    최적이면 이 값은 이산화 오차를 빼고 0 이하이다. 시험 제어장이 없으면 0을 반환한다.
    """
    worst = -np.inf
    for k in range(pair.grid.steps):
        nu = pair.nu(k)
        reference = limit_hamiltonian(p, nu, field(k, nu.x))
        for trial in trials:
            worst = max(worst, limit_hamiltonian(p, nu, trial(k, nu.x)) - reference)
    return float(worst) if np.isfinite(worst) else 0.0


def zero_trial(dim: int) -> TrialField:
    """항상 0인 제어장"""
    return lambda k, x: np.zeros((np.shape(x)[0], dim))


def lipschitz_trials(control_set: ControlSet, count: int, seed: int, max_slope: float = 2.0) -> List[TrialField]:
    r"""무작위 립시츠 제어장 ``P_K(a + s tanh(<w, x> + b))``\들. 기울기 ``|s||w|``\는 ``max_slope`` 이하이다."""
    rng = np.random.default_rng(seed)
    dim, bound = control_set.dim, control_set.bound
    trials = []
    for _ in range(count):
        a = control_set.project(rng.uniform(-bound, bound, size=dim))
        direction = rng.normal(size=dim)
        w = direction / np.linalg.norm(direction) * rng.uniform(0.5, 2.0)
        s = rng.uniform(-1.0, 1.0, size=dim)
        s *= rng.uniform(0.0, max_slope) / (np.linalg.norm(s) * np.linalg.norm(w))
        b = rng.uniform(-1.0, 1.0)
        trials.append(
            lambda k, x, a=a, s=s, w=w, b=b: control_set.project(a + s * np.tanh(np.asarray(x) @ w + b)[:, np.newaxis])
        )
    return trials


def perturbed_trials(
    field: ControlField, control_set: ControlSet, count: int, seed: int, scale: float = 0.1
) -> List[TrialField]:
    """``field``\\에 크기가 ``scale * bound`` 이하인 상수 벡터를 더하고 ``K``\\로 사영한 제어장들"""
    rng = np.random.default_rng(seed)
    trials = []
    for _ in range(count):
        shift = rng.uniform(-1.0, 1.0, size=control_set.dim) * scale * control_set.bound
        trials.append(lambda k, x, shift=shift: control_set.project(field(k, x) + shift))
    return trials


__all__ = [
    "TrialField",
    "limit_hamiltonian",
    "lipschitz_trials",
    "maximality_check",
    "perturbed_trials",
    "zero_trial",
]
