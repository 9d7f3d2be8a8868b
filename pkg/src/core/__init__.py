from .constants import (
    ANGSTROM,
    CODATA_2018,
    ELECTRON_MASS_KG,
    EngineConfig,
    MomentumConvention,
    PhysicalConstants,
    SpectrumMode,
    ThermalPoint,
    Well,
    beta_of,
    dimensionless_group,
    half_width_for_group,
    make_engine_config,
    thermal_point,
)
from .exceptions import (
    BadBasisSize,
    BadParameter,
    BadTolerance,
    ConfigError,
    ConflictingFlags,
    DegenerateDenominator,
    DomainError,
    EngineError,
    EvaluationFailure,
    LevelOutOfRange,
    NegativeVariance,
    NonPositiveParameter,
    ParseError,
    SeriesNotConverged,
    SeriesOverflow,
    TemperatureOrder,
    UnknownKey,
)
from .settings import Settings, configure_logging, load_settings

__all__ = [
    "ANGSTROM",
    "CODATA_2018",
    "ELECTRON_MASS_KG",
    "EngineConfig",
    "MomentumConvention",
    "PhysicalConstants",
    "SpectrumMode",
    "ThermalPoint",
    "Well",
    "beta_of",
    "dimensionless_group",
    "half_width_for_group",
    "make_engine_config",
    "thermal_point",
    "BadBasisSize",
    "BadParameter",
    "BadTolerance",
    "ConfigError",
    "ConflictingFlags",
    "DegenerateDenominator",
    "DomainError",
    "EngineError",
    "EvaluationFailure",
    "LevelOutOfRange",
    "NegativeVariance",
    "NonPositiveParameter",
    "ParseError",
    "SeriesNotConverged",
    "SeriesOverflow",
    "TemperatureOrder",
    "UnknownKey",
    "Settings",
    "configure_logging",
    "load_settings",
]
