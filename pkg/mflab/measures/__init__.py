from .empirical import (
    AnyMeasure,
    EmpiricalMeasure,
    PhaseMeasure,
    VectorMeasure,
    atoms_of,
    phase_to_vector,
    push_x,
    support_radius,
)
from .wasserstein import (
    ASSIGNMENT_CAP,
    DistanceResult,
    SinkhornResult,
    w1_between,
    w1_exact_1d,
    w1_exact_assignment,
    w1_sinkhorn,
)

__all__ = [
    "ASSIGNMENT_CAP",
    "AnyMeasure",
    "DistanceResult",
    "EmpiricalMeasure",
    "PhaseMeasure",
    "SinkhornResult",
    "VectorMeasure",
    "atoms_of",
    "phase_to_vector",
    "push_x",
    "support_radius",
    "w1_between",
    "w1_exact_1d",
    "w1_exact_assignment",
    "w1_sinkhorn",
]
