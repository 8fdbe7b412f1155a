"""Sparse total least-squares reconstruction for perturbed compressive sensing."""

from ._core import (
    BacktrackingError,
    CostEval,
    Ensemble,
    ProblemInstance,
    ScenarioConfig,
    Schedule,
    SolveResult,
    TraceRecord,
    adaptive_step,
    adcd_solve,
    eval_cost,
    generate_instance,
    gradient,
    iteration_schedule,
    line_search_ok,
    pg_solve,
    shrink,
    squared_error,
    support_errors,
)

__all__ = [
    "BacktrackingError",
    "CostEval",
    "Ensemble",
    "ProblemInstance",
    "ScenarioConfig",
    "Schedule",
    "SolveResult",
    "TraceRecord",
    "adaptive_step",
    "adcd_solve",
    "eval_cost",
    "generate_instance",
    "gradient",
    "iteration_schedule",
    "line_search_ok",
    "pg_solve",
    "shrink",
    "squared_error",
    "support_errors",
]
