r"""제어 비용의 측도 범함수 ``Phi(rho | nu)``

원자 측도에서는 밀도 ``d rho / d nu``\가 겹치는 원자 묶음 위의 제어 평균이므로

``Phi(rho | nu) = sum_groups (묶음 질량) * phi(묶음 평균 제어)``

이다. ``(x, r)``\로 묶는 것은 ``x``\로 묶는 것보다 잘게 나누는 것이므로 옌센 부등식에 의해

``(1/N) sum phi(u_i) >= Phi(rho | nu) >= Phi(mu | Psi)``

가 성립하고, 원자가 모두 다르면 세 값이 같다.
"""
from typing import NamedTuple, Union

import numpy as np

from ..measures import EmpiricalMeasure, PhaseMeasure, VectorMeasure
from ..problems import QuadraticControlCost
from .generated import GeneratedPair
from .grouping import COINCIDENCE_TOLERANCE, group_coincident


class PhiChain(NamedTuple):
    mean_cost: float  # (1/N) sum phi(u_i)
    phase: float  # Phi(rho | nu)
    position: float  # Phi(mu | Psi)

    def holds(self, atol: float = 1e-12) -> bool:
        return self.mean_cost >= self.phase - atol and self.phase >= self.position - atol


def phi_functional(
    rho: VectorMeasure, nu: Union[PhaseMeasure, EmpiricalMeasure], cost: QuadraticControlCost
) -> float:
    r"""``Phi(rho | nu)``

    Parameters
    ----------
    rho : VectorMeasure
        ``nu``\의 원자 위에 제어를 실은 측도
    nu : PhaseMeasure or EmpiricalMeasure
    cost : QuadraticControlCost
        ``phi``

    Returns
    -------
    value : float

    Exceptions
    ----------
    ValueError
        ``rho``\가 ``nu`` 위에 놓여 있지 않을 경우

    Examples
    --------
    겹치는 두 원자에 제어 0과 2가 실리면 밀도는 1이다.

    >>> nu = EmpiricalMeasure([0.0, 0.0])
    >>> phi_functional(VectorMeasure(nu, [0.0, 2.0]), nu, QuadraticControlCost(1.0))
    0.5
    """
    base = rho.base.atoms
    if base.shape != nu.atoms.shape or not np.allclose(base, nu.atoms, rtol=0.0, atol=COINCIDENCE_TOLERANCE):
        raise ValueError("`rho` must be carried by the atoms of `nu`.")
    n = nu.size
    total = 0.0
    for members in group_coincident(nu.atoms):
        density = rho.payload[members].mean(axis=0)
        total += len(members) / n * float(cost.value(density))
    return total


def mean_control_cost(u: np.ndarray, cost: QuadraticControlCost) -> float:
    """``(1/N) sum phi(u_i)``"""
    return float(np.mean(cost.value(u)))


def phi_chain(pair: GeneratedPair, k: int, cost: QuadraticControlCost) -> PhiChain:
    """노드 ``k``\\에서의 세 값"""
    return PhiChain(
        mean_control_cost(pair.controls[k], cost),
        phi_functional(pair.rho(k), pair.nu(k), cost),
        phi_functional(pair.mu(k), pair.psi(k), cost),
    )


def phi_gap(pair: GeneratedPair, cost: QuadraticControlCost) -> float:
    r"""제어 노드 전체에서 ``(1/N) sum phi(u_i) - Phi(rho | nu)``\의 최댓값. 원자가 모두 다르면 0이다."""
    return max(
        max(0.0, chain.mean_cost - chain.phase) for chain in (phi_chain(pair, k, cost) for k in range(pair.grid.steps))
    )


__all__ = ["PhiChain", "mean_control_cost", "phi_chain", "phi_functional", "phi_gap"]
