r"""유한 ``N`` 해밀토니안과 그 미분

해밀토니안은 ``H_N(x, r, u) = (1/N) sum_k <r_k, v(x_k, psi) + h(x_k, psi) u_k> - L(psi) - (1/N) sum_k phi(u_k)``\이며
``psi``\는 ``x``\의 경험측도이다. 공상태 ``r``\은 ``1/N`` 무게가 붙도록 다시 척도를 맞춘 값이다.
"""
import numpy as np
from numpy.typing import ArrayLike

from ..problems import ProblemSpec


def _as_particles(a: ArrayLike, dim: int) -> np.ndarray:
    return np.array(a, dtype=float).reshape(-1, dim)


def hamiltonian_n(p: ProblemSpec, x: ArrayLike, r: ArrayLike, u: ArrayLike) -> float:
    """유한 ``N`` 해밀토니안 ``H_N(x, r, u)``

    Examples
    --------
    모델 문제에서 ``r = (-2, 2)``, ``u = (-1, 1)``, ``control_weight = 0.5``\\일 때

    >>> from mflab.problems import build_problem
    >>> hamiltonian_n(build_problem("model_case"), [-1.0, 1.0], [-2.0, 2.0], [-1.0, 1.0])
    1.75
    """
    x, r, u = (_as_particles(a, p.dim) for a in (x, r, u))
    if not x.shape == r.shape == u.shape:
        raise ValueError("`x`, `r` and `u` must have the same number of particles.")
    h = p.activation.value(x, x)
    drift = p.velocity.value(x, x) + h[:, np.newaxis] * u
    return float(
        np.mean(np.sum(r * drift, axis=1)) - p.running_cost.value(x) - np.mean(p.control_cost.value(u))
    )


def maximize_hamiltonian_pointwise(p: ProblemSpec, x: ArrayLike, r: ArrayLike) -> np.ndarray:
    r"""``argmax_{u in K^N} H_N(x, r, u)``.

    ``H_N``\은 ``u_k``\별로 분리되므로 입자마다 ``argmax_{u in K} <h(x_k) r_k, u> - phi(u)``\를 구하면 된다.
    ``h(x_k) = 0``\이면 ``u_k = 0``\이다.
    """
    x, r = _as_particles(x, p.dim), _as_particles(r, p.dim)
    h = p.activation.value(x, x)
    return p.control_cost.argmax(h[:, np.newaxis] * r, p.control_set)


def field_vjp(p: ProblemSpec, x: np.ndarray, u: np.ndarray, weights: np.ndarray) -> np.ndarray:
    r"""입자계 속도장 ``F_j = v(x_j, psi) + h(x_j, psi) u_j``\의 전치 야코비안과 ``weights``\의 곱.

    결과의 ``i``\번째 행은 ``sum_j (dF_j / dx_i)^T w_j``\이며, 전개하면

    ``grad_x v(x_i)^T w_i + grad_x h(x_i) <w_i, u_i>
    + (1/N) sum_j [grad_psi v(x_j)(x_i)^T w_j + grad_psi h(x_j)(x_i) <w_j, u_j>]``

    이다. 계산량은 ``O(N^2)``\이다.
    """
    n = x.shape[0]
    local_v = p.velocity.grad_x(x, x)  # (N, d, d)
    nonlocal_v = p.velocity.grad_psi(x, x, x)  # (N, N, d, d), [j, i]
    local_h = p.activation.grad_x(x, x)  # (N, d)
    nonlocal_h = p.activation.grad_psi(x, x, x)  # (N, N, d), [j, i]
    power = np.sum(weights * u, axis=1)  # <w_j, u_j>
    result = np.einsum("iab,ia->ib", local_v, weights)
    result += local_h * power[:, np.newaxis]
    result += np.einsum("jiab,ja->ib", nonlocal_v, weights) / n
    result += np.einsum("jib,j->ib", nonlocal_h, power) / n
    return result


__all__ = ["field_vjp", "hamiltonian_n", "maximize_hamiltonian_pointwise"]
