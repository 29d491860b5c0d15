"""위치와 라벨을 함께 적분한다."""
import logging

import numpy as np
from numpy.typing import ArrayLike

from ..errors import IntegrationError, LabelInvariantError
from ..problems import LABEL_TOLERANCE, ProblemSpec
from .forward import particle_field, rk4_step
from .grids import Controls, ReplicatorTrajectory, TimeGrid, check_grid, control_values

logger = logging.getLogger(__name__)

RENORMALISE_THRESHOLD = 1e-10


def integrate_replicator(
    p: ProblemSpec, u: Controls, x0: ArrayLike, labels0: ArrayLike, grid: TimeGrid
) -> ReplicatorTrajectory:
    r"""위치 ``x_i``\와 라벨 ``lambda_i``\를 RK4로 함께 적분한다.

    위치는 :func:`integrate_forward`\와 같은 식을 따르고, 라벨은 ``d lambda_i / dt = T(c_i, psi_t)``\를
    따른다. 매 단계가 끝난 뒤 보존량의 오차가 ``1e-10``\을 넘으면 라벨을 다시 정규화하고 로그를 남긴다.

    Parameters
    ----------
    p : ProblemSpec
        ``label_field``\가 있는 문제
    u : ControlGrid or array, shape (S, N, d)
        위치에 작용하는 제어
    x0 : array-like, shape (N, d)
    labels0 : array-like, shape (N, n)
        허용 집합 안의 초기 라벨
    grid : TimeGrid

    Returns
    -------
    trajectory : ReplicatorTrajectory

    Exceptions
    ----------
    ValueError
        문제에 라벨 동역학이 없거나 초기 라벨이 허용 집합 밖에 있을 경우
    LabelInvariantError
        라벨이 허용 집합을 ``1e-6`` 이상 벗어났을 경우
    IntegrationError
        상태가 유한하지 않게 되었을 경우
    """
    field = p.label_field
    if field is None:
        raise ValueError(f"Problem `{p.name}` has no label dynamics.")
    u = control_values(u)
    x0 = np.array(x0, dtype=float).reshape(-1, p.dim)
    labels0 = np.array(labels0, dtype=float).reshape(x0.shape[0], field.size)
    check_grid(grid, u, x0.shape[0])
    if field.invariant_violation(labels0) > LABEL_TOLERANCE:
        raise ValueError("`labels0` lies outside the label invariant set.")

    n, d = x0.shape
    states = np.empty((grid.nodes, n, d))
    labels = np.empty((grid.nodes, n, field.size))
    states[0], labels[0] = x0, labels0
    renormalisations = 0

    def rhs(y: np.ndarray, u_k: np.ndarray) -> np.ndarray:
        x, lam = y[:, :d], y[:, d:]
        return np.hstack([particle_field(p, x, u_k), field.velocity(x, lam, x)])

    for k in range(grid.steps):
        u_k = u[k]
        y = rk4_step(lambda z: rhs(z, u_k), np.hstack([states[k], labels[k]]), grid.dt)
        if not np.all(np.isfinite(y)):
            raise IntegrationError("Particle state or label became non-finite", step=k)
        x_next, lam_next = y[:, :d], y[:, d:]
        violation = field.invariant_violation(lam_next)
        if violation > LABEL_TOLERANCE:
            raise LabelInvariantError(f"Label left its invariant set by {violation:.3e}", step=k)
        drift = float(np.max(np.abs(field.conserved(lam_next) - 1.0)))
        if drift > RENORMALISE_THRESHOLD:
            logger.info("Renormalising labels at step %d (drift %.3e)", k, drift)
            lam_next = field.normalize(lam_next)
            renormalisations += 1
        states[k + 1], labels[k + 1] = x_next, lam_next
    return ReplicatorTrajectory(grid, states, labels, renormalisations)


__all__ = ["RENORMALISE_THRESHOLD", "integrate_replicator"]
