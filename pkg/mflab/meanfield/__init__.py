from .diagnostics import (
    DEFAULT_RELATIVE_WIDTH,
    ControlField,
    control_lipschitz_estimate,
    default_bin_width,
    extract_control_field,
    lipschitz_estimate,
    r_independence_score,
    support_diameter,
)
from .generated import GeneratedPair, build_generated
from .grouping import COINCIDENCE_TOLERANCE, cube_keys, group_by_cube, group_coincident
from .maximality import (
    TrialField,
    limit_hamiltonian,
    lipschitz_trials,
    maximality_check,
    perturbed_trials,
    zero_trial,
)
from .phi import PhiChain, mean_control_cost, phi_chain, phi_functional, phi_gap
from .study import (
    SOLVER_METHODS,
    ConvergenceReport,
    ConvergenceRow,
    DiagnosticOptions,
    SolvedInstance,
    SolverOptions,
    StudyFailure,
    convergence_study,
    solve_all,
    solve_instance,
)

__all__ = [
    "COINCIDENCE_TOLERANCE",
    "ControlField",
    "ConvergenceReport",
    "ConvergenceRow",
    "DEFAULT_RELATIVE_WIDTH",
    "DiagnosticOptions",
    "GeneratedPair",
    "PhiChain",
    "SOLVER_METHODS",
    "SolvedInstance",
    "SolverOptions",
    "StudyFailure",
    "TrialField",
    "build_generated",
    "control_lipschitz_estimate",
    "convergence_study",
    "cube_keys",
    "default_bin_width",
    "extract_control_field",
    "group_by_cube",
    "group_coincident",
    "limit_hamiltonian",
    "lipschitz_estimate",
    "lipschitz_trials",
    "maximality_check",
    "mean_control_cost",
    "perturbed_trials",
    "phi_chain",
    "phi_functional",
    "phi_gap",
    "r_independence_score",
    "solve_all",
    "solve_instance",
    "support_diameter",
    "zero_trial",
]
