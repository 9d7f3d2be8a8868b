from .levels import (
    LevelArrays,
    LevelData,
    excitation_energy,
    fv_minus_component,
    fv_plus,
    fv_plus_array,
    level,
    level_arrays,
    momentum,
    state_uncertainty,
)
from .matrix_elements import momentum_elements, position_elements

__all__ = [
    "LevelArrays",
    "LevelData",
    "excitation_energy",
    "fv_minus_component",
    "fv_plus",
    "fv_plus_array",
    "level",
    "level_arrays",
    "momentum",
    "state_uncertainty",
    "momentum_elements",
    "position_elements",
]
