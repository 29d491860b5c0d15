from .catalog import CATALOG, CatalogEntry, ParameterDoc, build_problem, list_entries
from .control import BallControlSet, BoxControlSet, ControlSet, QuadraticControlCost
from .costs import GaussianAttraction, NegativeVariance, PairwiseCost, QuadraticSpread, ZeroCost
from .fields import BumpActivation, ConstantActivation, KernelVelocity, ZeroVelocity
from .labels import LABEL_TOLERANCE, EntropicLabelField, MarkovLabelField, ReplicatorState, replicator_rhs
from .definition import (
    LabelField,
    MidpointGrid,
    ProblemSpec,
    UniformBox,
    eval_g,
    eval_grad_psi_g,
    eval_grad_psi_h,
    eval_grad_psi_L,
    eval_grad_psi_v,
    eval_grad_x_h,
    eval_grad_x_v,
    eval_h,
    eval_L,
    eval_phi,
    eval_phi_conjugate_argmax,
    eval_v,
    sample_initial,
    sample_labels,
)

__all__ = [
    "BallControlSet",
    "BoxControlSet",
    "BumpActivation",
    "CATALOG",
    "CatalogEntry",
    "ConstantActivation",
    "ControlSet",
    "EntropicLabelField",
    "GaussianAttraction",
    "KernelVelocity",
    "LABEL_TOLERANCE",
    "LabelField",
    "MarkovLabelField",
    "MidpointGrid",
    "NegativeVariance",
    "PairwiseCost",
    "ParameterDoc",
    "ProblemSpec",
    "QuadraticControlCost",
    "QuadraticSpread",
    "ReplicatorState",
    "UniformBox",
    "ZeroCost",
    "ZeroVelocity",
    "build_problem",
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
    "list_entries",
    "replicator_rhs",
    "sample_initial",
    "sample_labels",
]
