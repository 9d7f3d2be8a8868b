from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from src.core.constants import EngineConfig, Well, beta_of
from src.core.exceptions import DegenerateDenominator, TemperatureOrder
from src.ensemble.partition import Method, PartitionResult, mean_level, partition
from src.uncertainty.thermo_map import UncertaintyMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycleReport:
    """
    Four corners A (single, T1), B (partitioned, T1), C (partitioned, T2), D (single, T2).

    Heats are absorbed-positive. Partition functions carry e^{-β(mc² + shift)}
    factored out and are kept as logarithms; the Z_* properties exponentiate.
    """

    T1: float
    T2: float
    log_Z_A: float
    log_Z_B: float
    log_Z_C: float
    log_Z_D: float
    U_A: float
    U_B: float
    U_C: float
    U_D: float
    Q_AB: float
    Q_BC: float
    Q_CD: float
    Q_DA: float
    W: float
    efficiency: float
    efficiency_from_heats: float
    carnot: float
    method: Method
    energy_shift: float = 0.0

    @property
    def Z_A(self) -> float:
        return math.exp(self.log_Z_A)

    @property
    def Z_B(self) -> float:
        return math.exp(self.log_Z_B)

    @property
    def Z_C(self) -> float:
        return math.exp(self.log_Z_C)

    @property
    def Z_D(self) -> float:
        return math.exp(self.log_Z_D)

    @property
    def heat_in(self) -> float:
        return self.Q_DA + self.Q_AB

    def to_dict(self) -> dict:
        return {
            "T1": self.T1,
            "T2": self.T2,
            "log_Z_A": self.log_Z_A,
            "log_Z_B": self.log_Z_B,
            "log_Z_C": self.log_Z_C,
            "log_Z_D": self.log_Z_D,
            "U_A": self.U_A,
            "U_B": self.U_B,
            "U_C": self.U_C,
            "U_D": self.U_D,
            "Q_AB": self.Q_AB,
            "Q_BC": self.Q_BC,
            "Q_CD": self.Q_CD,
            "Q_DA": self.Q_DA,
            "W": self.W,
            "efficiency": self.efficiency,
            "efficiency_from_heats": self.efficiency_from_heats,
            "carnot": self.carnot,
            "method": self.method.value,
            "energy_shift": self.energy_shift,
        }


def _isothermal_heat(start: PartitionResult, end: PartitionResult, temperature: float, k_B: float) -> float:
    # U_end - U_start + k_B T ln(Z_end/Z_start); ground and shift terms cancel against β k_B T = 1
    return (end.mean_rel - start.mean_rel) + k_B * temperature * (end.log_sum_rel - start.log_sum_rel)


def _isochoric_heat(start: PartitionResult, end: PartitionResult) -> float:
    # same well on both sides, so ground excitations and shifts coincide
    return (end.ground_excitation - start.ground_excitation) + (end.mean_rel - start.mean_rel)


def _corners(cfg: EngineConfig, T1: float, T2: float, method: Method, energy_shift: float):
    return (
        partition(cfg, T1, Well.SINGLE, method, energy_shift=energy_shift),
        partition(cfg, T1, Well.PARTITIONED, method, energy_shift=energy_shift),
        partition(cfg, T2, Well.PARTITIONED, method, energy_shift=energy_shift),
        partition(cfg, T2, Well.SINGLE, method, energy_shift=energy_shift),
    )


def cycle_work(cfg: EngineConfig, T1: float, T2: float, method: Method = Method.ORACLE_SERIES) -> float:
    """W for the cycle run between T1 and T2 in either order."""
    a, b, c, d = _corners(cfg, T1, T2, method, 0.0)
    k_B = cfg.constants.k_B
    return (
        _isothermal_heat(a, b, T1, k_B)
        + _isochoric_heat(b, c)
        + _isothermal_heat(c, d, T2, k_B)
        + _isochoric_heat(d, a)
    )


def run_cycle(
    cfg: EngineConfig,
    T1: float,
    T2: float,
    method: Method = Method.ORACLE_SERIES,
    *,
    energy_shift: float = 0.0,
) -> CycleReport:
    if T2 > T1:
        raise TemperatureOrder(f"cold bath T2={T2} K is hotter than hot bath T1={T1} K")
    a, b, c, d = _corners(cfg, T1, T2, method, energy_shift)
    k_B = cfg.constants.k_B

    q_ab = _isothermal_heat(a, b, T1, k_B)
    q_bc = _isochoric_heat(b, c)
    q_cd = _isothermal_heat(c, d, T2, k_B)
    q_da = _isochoric_heat(d, a)
    work = q_ab + q_bc + q_cd + q_da
    heat_in = q_da + q_ab
    if heat_in > 0:
        efficiency = work / heat_in
        from_heats = 1.0 + (q_bc + q_cd) / heat_in
    else:
        logger.warning("cycle T1=%s K, T2=%s K absorbs no net heat (Q_DA + Q_AB = %.3e J)", T1, T2, heat_in)
        efficiency = from_heats = math.nan

    logger.debug("cycle %s: W=%.6e J, eta=%.6e", method.value, work, efficiency)
    return CycleReport(
        T1=float(T1),
        T2=float(T2),
        log_Z_A=a.log_z,
        log_Z_B=b.log_z,
        log_Z_C=c.log_z,
        log_Z_D=d.log_z,
        U_A=a.internal_energy,
        U_B=b.internal_energy,
        U_C=c.internal_energy,
        U_D=d.internal_energy,
        Q_AB=q_ab,
        Q_BC=q_bc,
        Q_CD=q_cd,
        Q_DA=q_da,
        W=work,
        efficiency=efficiency,
        efficiency_from_heats=from_heats,
        carnot=1.0 - T2 / T1,
        method=method,
        energy_shift=energy_shift,
    )


# -- uncertainty-driven forms -------------------------------------------------


def work_prefactor(cfg: EngineConfig) -> float:
    """πα, so that πα·f = k_B T1 once C_T is the exact compensator."""
    return math.pi * cfg.alpha()


def work_prefactor_literal(cfg: EngineConfig) -> float:
    """8L²α/(ħ²π²) as printed; it reduces to 1/m."""
    L = cfg.half_width_L
    hbar = cfg.constants.hbar
    return 8.0 * L * L * cfg.alpha() / (hbar * hbar * math.pi**2)


def log_ratios(cfg: EngineConfig, T1: float, T2: float, method: Method = Method.ORACLE_SERIES):
    """(ln(Z_B/Z_A), ln(Z_D/Z_C))."""
    a, b, c, d = _corners(cfg, T1, T2, method, 0.0)
    return b.log_z - a.log_z, d.log_z - c.log_z


def isothermal_entropy_changes(cfg: EngineConfig, T1: float, T2: float, method: Method = Method.ORACLE_SERIES):
    """(ΔS_AB/k_B, ΔS_CD/k_B), i.e. Q_AB/(k_B T1) and Q_CD/(k_B T2)."""
    a, b, c, d = _corners(cfg, T1, T2, method, 0.0)
    k_B = cfg.constants.k_B
    return _isothermal_heat(a, b, T1, k_B) / (k_B * T1), _isothermal_heat(c, d, T2, k_B) / (k_B * T2)


def uncertainty_weights(cfg: EngineConfig, T1: float, T2: float):
    """f and g: 16c√(2mc)/(π³ħ²)·(ΔX_T + ΔP_T + C_T) at T1 and T2."""
    f = UncertaintyMap.at(cfg, T1).radicand(beta_of(cfg, T1))
    g = UncertaintyMap.at(cfg, T2).radicand(beta_of(cfg, T2))
    return f, g


def work_from_uncertainty(
    cfg: EngineConfig,
    T1: float,
    T2: float,
    method: Method = Method.ORACLE_SERIES,
) -> float:
    """W = πα[f ln(Z_B/Z_A) + g ln(Z_D/Z_C)] with Z ratios from ``method``."""
    _check_order(T1, T2)
    f, g = uncertainty_weights(cfg, T1, T2)
    ln_ba, ln_dc = log_ratios(cfg, T1, T2, method)
    return work_prefactor(cfg) * (f * ln_ba + g * ln_dc)


def efficiency_from_weights(f: float, g: float, ln_ba: float, ln_dc: float, isochoric_scale: float = 1.0) -> float:
    """
    [g ln(Z_D/Z_C) + f ln(Z_B/Z_A)] / [-g/2 + f(ln(Z_B/Z_A) + ½)].

    ``isochoric_scale`` multiplies the (f - g)/2 share of the denominator, the
    heat taken in on the isochore D→A.
    """
    denominator = -0.5 * isochoric_scale * g + f * (ln_ba + 0.5 * isochoric_scale)
    if denominator == 0.0 or not math.isfinite(denominator):
        raise DegenerateDenominator(f"efficiency denominator is {denominator!r} (f={f!r}, g={g!r})")
    return (g * ln_dc + f * ln_ba) / denominator


def efficiency_from_uncertainty(
    cfg: EngineConfig,
    T1: float,
    T2: float,
    method: Method = Method.ORACLE_SERIES,
) -> float:
    _check_order(T1, T2)
    f, g = uncertainty_weights(cfg, T1, T2)
    ln_ba, ln_dc = log_ratios(cfg, T1, T2, method)
    return efficiency_from_weights(f, g, ln_ba, ln_dc)


def efficiency_from_mean_levels(
    cfg: EngineConfig,
    T1: float,
    T2: float,
    method: Method = Method.ORACLE_SERIES,
    *,
    mean_method: Method = Method.PAPER_CLOSED_FORM,
) -> float:
    """The n̄² form: f and g replaced by n̄²(T1) and n̄²(T2)."""
    _check_order(T1, T2)
    n1 = mean_level(cfg, T1, Well.SINGLE, mean_method)
    n2 = mean_level(cfg, T2, Well.SINGLE, mean_method)
    ln_ba, ln_dc = log_ratios(cfg, T1, T2, method)
    return efficiency_from_weights(n1 * n1, n2 * n2, ln_ba, ln_dc)


def _check_order(T1: float, T2: float) -> None:
    if T2 > T1:
        raise TemperatureOrder(f"cold bath T2={T2} K is hotter than hot bath T1={T1} K")
