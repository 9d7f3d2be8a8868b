from .boltzmann import BoltzmannState, boltzmann_sums, degeneracy, well_levels
from .partition import (
    Method,
    PartitionResult,
    ThermalAverages,
    internal_energy,
    log_partition_of_beta,
    mean_level,
    partition,
    thermal_averages,
)

__all__ = [
    "BoltzmannState",
    "boltzmann_sums",
    "degeneracy",
    "well_levels",
    "Method",
    "PartitionResult",
    "ThermalAverages",
    "internal_energy",
    "log_partition_of_beta",
    "mean_level",
    "partition",
    "thermal_averages",
]
