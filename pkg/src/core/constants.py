from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping, Optional

from .exceptions import BadTolerance, NonPositiveParameter

ANGSTROM = 1e-10
ELECTRON_MASS_KG = 9.1093837015e-31

DEFAULT_SERIES_REL_TOL = 1e-13
DEFAULT_SERIES_MAX_TERMS = 2_000_000
DEFAULT_FD_STEP_SCALE = 1.0
MIN_SERIES_MAX_TERMS = 10_000


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    k_B: float
    c: float

    def __post_init__(self) -> None:
        for name in ("hbar", "k_B", "c"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise NonPositiveParameter(f"physical constant {name} must be positive, got {value!r}")

    def to_dict(self) -> dict:
        return {"hbar": self.hbar, "k_B": self.k_B, "c": self.c}


# CODATA 2018 exact / recommended values.
CODATA_2018 = PhysicalConstants(hbar=1.054571817e-34, k_B=1.380649e-23, c=299_792_458.0)


class SpectrumMode(Enum):
    EXACT = "exact"
    EXPANDED = "expanded"


class MomentumConvention(Enum):
    """Rest term added to every ⟨p²⟩.

    DIMENSIONAL uses 2m²c² (per-state matrix elements), PAPER_LITERAL the bare
    2mc² printed in the thermal formulas, KINETIC_ONLY drops it.
    """

    DIMENSIONAL = "dimensional"
    PAPER_LITERAL = "paper_literal"
    KINETIC_ONLY = "kinetic_only"


class Well(Enum):
    SINGLE = "single"
    PARTITIONED = "partitioned"


@dataclass(frozen=True)
class EngineConfig:
    mass: float
    half_width_L: float
    constants: PhysicalConstants = CODATA_2018
    series_rel_tol: float = DEFAULT_SERIES_REL_TOL
    series_max_terms: int = DEFAULT_SERIES_MAX_TERMS
    fd_step_scale: float = DEFAULT_FD_STEP_SCALE
    spectrum: SpectrumMode = SpectrumMode.EXPANDED
    momentum: MomentumConvention = MomentumConvention.DIMENSIONAL

    def alpha(self) -> float:
        hbar = self.constants.hbar
        return math.pi**2 * hbar**2 / (2.0 * self.mass * (2.0 * self.half_width_L) ** 2)

    @property
    def rest_energy(self) -> float:
        return self.mass * self.constants.c**2

    @property
    def rest_momentum_term(self) -> float:
        """The constant added to ⟨p²⟩ under the configured momentum convention."""
        m, c = self.mass, self.constants.c
        if self.momentum is MomentumConvention.DIMENSIONAL:
            return 2.0 * m**2 * c**2
        if self.momentum is MomentumConvention.PAPER_LITERAL:
            return 2.0 * m * c**2
        return 0.0

    def with_half_width(self, half_width_L: float) -> "EngineConfig":
        _require_positive("half_width_L", half_width_L)
        return replace(self, half_width_L=half_width_L)

    def to_dict(self) -> dict:
        return {
            "mass": self.mass,
            "half_width_L": self.half_width_L,
            "constants": self.constants.to_dict(),
            "series_rel_tol": self.series_rel_tol,
            "series_max_terms": self.series_max_terms,
            "fd_step_scale": self.fd_step_scale,
            "spectrum": self.spectrum.value,
            "momentum": self.momentum.value,
            "alpha": self.alpha(),
        }


@dataclass(frozen=True)
class ThermalPoint:
    temperature: float
    beta: float
    alpha_beta: float
    well: Well = Well.SINGLE

    def to_dict(self) -> dict:
        return {
            "temperature": self.temperature,
            "beta": self.beta,
            "alpha_beta": self.alpha_beta,
            "well": self.well.value,
        }


_TOLERANCE_KEYS = {"series_rel_tol", "series_max_terms", "fd_step_scale"}


def make_engine_config(
    mass: float,
    half_width_L: float,
    overrides: Optional[Mapping[str, float]] = None,
    *,
    constants: PhysicalConstants = CODATA_2018,
    spectrum: SpectrumMode = SpectrumMode.EXPANDED,
    momentum: MomentumConvention = MomentumConvention.DIMENSIONAL,
) -> EngineConfig:
    """Validate engine parameters and apply tolerance defaults."""
    _require_positive("mass", mass)
    _require_positive("half_width_L", half_width_L)

    options = {
        "series_rel_tol": DEFAULT_SERIES_REL_TOL,
        "series_max_terms": DEFAULT_SERIES_MAX_TERMS,
        "fd_step_scale": DEFAULT_FD_STEP_SCALE,
    }
    for key, value in (overrides or {}).items():
        if key not in _TOLERANCE_KEYS:
            raise BadTolerance(f"unknown tolerance override '{key}'")
        if value is not None:
            options[key] = value

    rel_tol = float(options["series_rel_tol"])
    if not (0.0 < rel_tol < 1e-6):
        raise BadTolerance(f"series_rel_tol must lie in (0, 1e-6), got {rel_tol!r}")
    max_terms = options["series_max_terms"]
    if int(max_terms) != max_terms or max_terms < MIN_SERIES_MAX_TERMS:
        raise BadTolerance(f"series_max_terms must be an integer >= {MIN_SERIES_MAX_TERMS}, got {max_terms!r}")
    step_scale = float(options["fd_step_scale"])
    if not (math.isfinite(step_scale) and step_scale > 0):
        raise BadTolerance(f"fd_step_scale must be positive, got {step_scale!r}")

    return EngineConfig(
        mass=float(mass),
        half_width_L=float(half_width_L),
        constants=constants,
        series_rel_tol=rel_tol,
        series_max_terms=int(max_terms),
        fd_step_scale=step_scale,
        spectrum=spectrum,
        momentum=momentum,
    )


def beta_of(cfg: EngineConfig, temperature: float) -> float:
    _require_positive("temperature", temperature)
    return 1.0 / (cfg.constants.k_B * temperature)


def dimensionless_group(cfg: EngineConfig, temperature: float) -> float:
    """αβ = α/(k_B T); every closed form is leading order in this group."""
    return cfg.alpha() * beta_of(cfg, temperature)


def thermal_point(cfg: EngineConfig, temperature: float, well: Well = Well.SINGLE) -> ThermalPoint:
    beta = beta_of(cfg, temperature)
    return ThermalPoint(temperature=float(temperature), beta=beta, alpha_beta=cfg.alpha() * beta, well=well)


def half_width_for_group(
    mass: float,
    temperature: float,
    alpha_beta: float,
    constants: PhysicalConstants = CODATA_2018,
) -> float:
    """Half-width L at which the dimensionless group takes the requested value."""
    _require_positive("mass", mass)
    _require_positive("temperature", temperature)
    _require_positive("alpha_beta", alpha_beta)
    beta = 1.0 / (constants.k_B * temperature)
    # αβ = π²ħ²β / (8 m L²)
    return math.pi * constants.hbar * math.sqrt(beta / (8.0 * mass * alpha_beta))


def _require_positive(name: str, value: float) -> None:
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise NonPositiveParameter(f"{name} must be a finite number, got {value!r}")
    if value <= 0:
        raise NonPositiveParameter(f"{name} must be positive, got {value!r}")
