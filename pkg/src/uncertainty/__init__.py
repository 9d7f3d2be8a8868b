from .bounds import (
    BoundPair,
    DunklWilliamsRecord,
    closed_variance_sum,
    dunkl_williams,
    dunkl_williams_check,
    reverse_bound_state,
    reverse_bound_thermal,
    state_bounds,
    state_variance_sum,
    sum_variance_lower_bound,
    thermal_bounds,
    thermal_dunkl_williams,
    thermal_lower_bound,
    thermal_moment_sum,
    thermal_variance_sum,
)
from .thermal import (
    UncertaintyReport,
    ValidityFlag,
    closed_variance_x_erfc,
    normalized_sum,
    sum_uncertainty_fixed_n,
    thermal_scales,
    thermal_variance_p,
    thermal_variance_x,
    uncertainty_report,
)
from .thermo_map import (
    UncertaintyMap,
    UncertaintyMappedState,
    c_t,
    c_t_literal,
    chi_literal,
    entropy_from_uncertainty,
    entropy_literal,
    eta_corr_literal,
    helmholtz_from_uncertainty,
    internal_energy_from_uncertainty,
    mapped_state,
    partition_from_uncertainty,
    prefactor_ratio,
    tau_literal,
    zeta_literal,
)

__all__ = [
    "BoundPair",
    "DunklWilliamsRecord",
    "closed_variance_sum",
    "dunkl_williams",
    "dunkl_williams_check",
    "reverse_bound_state",
    "reverse_bound_thermal",
    "state_bounds",
    "state_variance_sum",
    "sum_variance_lower_bound",
    "thermal_bounds",
    "thermal_dunkl_williams",
    "thermal_lower_bound",
    "thermal_moment_sum",
    "thermal_variance_sum",
    "UncertaintyReport",
    "ValidityFlag",
    "closed_variance_x_erfc",
    "normalized_sum",
    "sum_uncertainty_fixed_n",
    "thermal_scales",
    "thermal_variance_p",
    "thermal_variance_x",
    "uncertainty_report",
    "UncertaintyMap",
    "UncertaintyMappedState",
    "c_t",
    "c_t_literal",
    "chi_literal",
    "entropy_from_uncertainty",
    "entropy_literal",
    "eta_corr_literal",
    "helmholtz_from_uncertainty",
    "internal_energy_from_uncertainty",
    "mapped_state",
    "partition_from_uncertainty",
    "prefactor_ratio",
    "tau_literal",
    "zeta_literal",
]
