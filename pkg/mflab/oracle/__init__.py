from .brute_force import (
    EVALUATION_BUDGET,
    MAX_TIME_VARYING_STEPS,
    OracleResult,
    brute_force_constant_controls,
    brute_force_time_varying,
)

__all__ = [
    "EVALUATION_BUDGET",
    "MAX_TIME_VARYING_STEPS",
    "OracleResult",
    "brute_force_constant_controls",
    "brute_force_time_varying",
]
