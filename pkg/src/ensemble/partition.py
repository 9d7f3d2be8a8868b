from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from src.core.constants import EngineConfig, SpectrumMode, ThermalPoint, Well, thermal_point
from src.core.exceptions import BadParameter
from src.numerics.series import gauss_sum

from .boltzmann import BoltzmannState, boltzmann_sums

logger = logging.getLogger(__name__)


class Method(Enum):
    ORACLE_SERIES = "oracle"
    PAPER_CLOSED_FORM = "paper"
    CORRECTED_INTEGRAL = "corrected"


@dataclass(frozen=True)
class PartitionResult:
    """
    Canonical partition function with e^{-β(mc² + shift)} factored out.

    The state is kept in three pieces, ground excitation ε_g, the logarithm of
    the ground-referenced sum and the mean excitation above ε_g, so that
    differences between wells can cancel ε_g exactly.
    """

    method: Method
    thermal_point: ThermalPoint
    ground_excitation: float
    log_sum_rel: float
    mean_rel: float
    rest_energy: float
    energy_shift: float = 0.0
    terms_used: int = 0
    truncation_estimate: float = 0.0
    rest_energy_factored: bool = True

    @property
    def beta(self) -> float:
        return self.thermal_point.beta

    @property
    def log_z(self) -> float:
        return -self.beta * (self.ground_excitation + self.energy_shift) + self.log_sum_rel

    @property
    def Z(self) -> float:
        return math.exp(self.log_z)

    def full_log_z(self) -> float:
        """ln Z with the rest-energy factor reapplied."""
        return self.log_z - self.beta * self.rest_energy

    @property
    def thermal_energy(self) -> float:
        """U - mc² - shift."""
        return self.ground_excitation + self.mean_rel

    @property
    def internal_energy(self) -> float:
        return self.rest_energy + self.energy_shift + self.thermal_energy

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "thermal_point": self.thermal_point.to_dict(),
            "log_z": self.log_z,
            "Z": self.Z,
            "rest_energy_factored": self.rest_energy_factored,
            "internal_energy": self.internal_energy,
            "terms_used": self.terms_used,
            "truncation_estimate": self.truncation_estimate,
        }


@dataclass(frozen=True)
class ThermalAverages:
    n_mean: float
    n2_mean: float
    x_mean_T: float
    x2_mean_T: float
    p2_mean_T: float
    U: float
    thermal_energy: float

    @property
    def x_variance_T(self) -> float:
        return self.x2_mean_T - self.x_mean_T**2

    @property
    def p_variance_T(self) -> float:
        return self.p2_mean_T

    def to_dict(self) -> dict:
        return {
            "n_mean": self.n_mean,
            "n2_mean": self.n2_mean,
            "x_mean_T": self.x_mean_T,
            "x2_mean_T": self.x2_mean_T,
            "p2_mean_T": self.p2_mean_T,
            "U": self.U,
        }


def _well_scale(well: Well) -> float:
    # E_{2n} = 4αn²: the partitioned well is the single-well series at 4αβ
    return 4.0 if well is Well.PARTITIONED else 1.0


def partition(
    cfg: EngineConfig,
    temperature: float,
    well: Well = Well.SINGLE,
    method: Method = Method.ORACLE_SERIES,
    *,
    mode: Optional[SpectrumMode] = None,
    energy_shift: float = 0.0,
) -> PartitionResult:
    point = thermal_point(cfg, temperature, well)
    return _partition_at(cfg, point, method, mode=mode, energy_shift=energy_shift)


def _partition_at(
    cfg: EngineConfig,
    point: ThermalPoint,
    method: Method,
    *,
    mode: Optional[SpectrumMode] = None,
    energy_shift: float = 0.0,
    max_level: Optional[int] = None,
) -> PartitionResult:
    if method is Method.ORACLE_SERIES:
        state = boltzmann_sums(cfg, point.beta, point.well, mode, max_level=max_level)
        return _from_state(cfg, point, state, energy_shift)

    if method is Method.PAPER_CLOSED_FORM:
        # ½√(π/(αβ)) for both wells: 2·½√(π/(4αβ)) is the same number
        log_z = math.log(0.5 * math.sqrt(math.pi / point.alpha_beta))
        return PartitionResult(
            method=method,
            thermal_point=point,
            ground_excitation=0.0,
            log_sum_rel=log_z,
            mean_rel=0.5 / point.beta,
            rest_energy=cfg.rest_energy,
            energy_shift=energy_shift,
        )

    if (mode or cfg.spectrum) is SpectrumMode.EXACT:
        raise BadParameter("the corrected integral is defined on the expanded spectrum only")
    scale = _well_scale(point.well)
    a = scale * point.alpha_beta
    s0 = gauss_sum(a, 0, rel_tol=cfg.series_rel_tol, max_terms=cfg.series_max_terms)
    s2 = gauss_sum(a, 2, rel_tol=cfg.series_rel_tol, max_terms=cfg.series_max_terms)
    degeneracy = 2.0 if point.well is Well.PARTITIONED else 1.0
    ground = scale * cfg.alpha()
    return PartitionResult(
        method=method,
        thermal_point=point,
        ground_excitation=ground,
        log_sum_rel=math.log(degeneracy) + s0.log_value + a,
        mean_rel=scale * cfg.alpha() * (s2.value / s0.value) - ground,
        rest_energy=cfg.rest_energy,
        energy_shift=energy_shift,
        terms_used=s0.terms_used + s2.terms_used,
        truncation_estimate=s0.truncation_estimate / s0.value,
    )


def _from_state(cfg: EngineConfig, point: ThermalPoint, state: BoltzmannState, shift: float) -> PartitionResult:
    return PartitionResult(
        method=Method.ORACLE_SERIES,
        thermal_point=point,
        ground_excitation=state.ground_excitation,
        log_sum_rel=state.log_sum_rel,
        mean_rel=state.mean_rel,
        rest_energy=cfg.rest_energy,
        energy_shift=shift,
        terms_used=state.terms_used,
        truncation_estimate=state.truncation_estimate,
    )


def mean_level(
    cfg: EngineConfig,
    temperature: float,
    well: Well = Well.SINGLE,
    method: Method = Method.ORACLE_SERIES,
    *,
    mode: Optional[SpectrumMode] = None,
) -> float:
    """Thermal mean quantum number n̄ (level index, so even numbers in the partitioned well)."""
    point = thermal_point(cfg, temperature, well)
    if method is Method.PAPER_CLOSED_FORM:
        return 1.0 / math.sqrt(math.pi * point.alpha_beta)
    if method is Method.ORACLE_SERIES:
        return boltzmann_sums(cfg, point.beta, well, mode).n_mean
    if (mode or cfg.spectrum) is SpectrumMode.EXACT:
        raise BadParameter("the corrected integral is defined on the expanded spectrum only")
    a = _well_scale(well) * point.alpha_beta
    s0 = gauss_sum(a, 0, rel_tol=cfg.series_rel_tol, max_terms=cfg.series_max_terms)
    s1 = gauss_sum(a, 1, rel_tol=cfg.series_rel_tol, max_terms=cfg.series_max_terms)
    index = 2.0 if well is Well.PARTITIONED else 1.0
    return index * s1.value / s0.value


def thermal_averages(
    cfg: EngineConfig,
    temperature: float,
    well: Well = Well.SINGLE,
    *,
    mode: Optional[SpectrumMode] = None,
    max_level: Optional[int] = None,
) -> ThermalAverages:
    point = thermal_point(cfg, temperature, well)
    state = boltzmann_sums(cfg, point.beta, well, mode, max_level=max_level)
    thermal = state.thermal_energy
    return ThermalAverages(
        n_mean=state.n_mean,
        n2_mean=state.n2_mean,
        x_mean_T=state.x_mean,
        x2_mean_T=state.x2_mean,
        p2_mean_T=state.p2_mean,
        U=cfg.rest_energy + thermal,
        thermal_energy=thermal,
    )


def internal_energy(
    cfg: EngineConfig,
    temperature: float,
    well: Well = Well.SINGLE,
    method: Method = Method.ORACLE_SERIES,
    *,
    mode: Optional[SpectrumMode] = None,
    energy_shift: float = 0.0,
) -> float:
    return partition(cfg, temperature, well, method, mode=mode, energy_shift=energy_shift).internal_energy


def log_partition_of_beta(
    cfg: EngineConfig,
    well: Well = Well.SINGLE,
    method: Method = Method.ORACLE_SERIES,
    *,
    mode: Optional[SpectrumMode] = None,
) -> Callable[[float], float]:
    """β ↦ ln Z (rest energy factored), for finite-difference checks of U = -∂ln Z/∂β."""

    def log_z(beta: float) -> float:
        point = ThermalPoint(
            temperature=1.0 / (cfg.constants.k_B * beta),
            beta=beta,
            alpha_beta=cfg.alpha() * beta,
            well=well,
        )
        return _partition_at(cfg, point, method, mode=mode).log_z

    return log_z
