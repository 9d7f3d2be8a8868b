from .efficiency_bounds import (
    BoundRatios,
    EfficiencyBoundPoint,
    EfficiencyBounds,
    bound_ratios,
    efficiency_bound_point,
    efficiency_bounds,
)
from .stirling import (
    CycleReport,
    cycle_work,
    efficiency_from_mean_levels,
    efficiency_from_uncertainty,
    efficiency_from_weights,
    isothermal_entropy_changes,
    log_ratios,
    run_cycle,
    uncertainty_weights,
    work_from_uncertainty,
    work_prefactor,
    work_prefactor_literal,
)

__all__ = [
    "BoundRatios",
    "EfficiencyBoundPoint",
    "EfficiencyBounds",
    "bound_ratios",
    "efficiency_bound_point",
    "efficiency_bounds",
    "CycleReport",
    "cycle_work",
    "efficiency_from_mean_levels",
    "efficiency_from_uncertainty",
    "efficiency_from_weights",
    "isothermal_entropy_changes",
    "log_ratios",
    "run_cycle",
    "uncertainty_weights",
    "work_from_uncertainty",
    "work_prefactor",
    "work_prefactor_literal",
]
