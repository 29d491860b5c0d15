from .costate import costate_velocity, hermite_midpoint, integrate_costate_backward, terminal_costate
from .direct import ARMIJO_CONSTANT, DirectResult, direct_optimize
from .gradient import DiscreteAdjoint, adjoint_gradient, discrete_adjoint, discrete_costate
from .hamiltonian import field_vjp, hamiltonian_n, maximize_hamiltonian_pointwise
from .sweep import DIVERGENCE_FACTOR, SweepReport, SweepResult, forward_backward_sweep, maximality_residual

__all__ = [
    "ARMIJO_CONSTANT",
    "DIVERGENCE_FACTOR",
    "DirectResult",
    "DiscreteAdjoint",
    "SweepReport",
    "SweepResult",
    "adjoint_gradient",
    "costate_velocity",
    "direct_optimize",
    "discrete_adjoint",
    "discrete_costate",
    "field_vjp",
    "forward_backward_sweep",
    "hamiltonian_n",
    "hermite_midpoint",
    "integrate_costate_backward",
    "maximality_residual",
    "maximize_hamiltonian_pointwise",
    "terminal_costate",
]
