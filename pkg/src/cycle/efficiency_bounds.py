from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

from src.core.constants import EngineConfig, beta_of
from src.core.exceptions import DegenerateDenominator, DomainError, EngineError
from src.ensemble.partition import Method
from src.uncertainty.bounds import thermal_lower_bound, thermal_moment_sum, thermal_variance_sum
from src.uncertainty.thermo_map import UncertaintyMap

from .stirling import _check_order, efficiency_from_weights, isothermal_entropy_changes, uncertainty_weights

logger = logging.getLogger(__name__)

VALID = "valid"
NEGATIVE_VARIANCE = "negative_variance_regime"
DEGENERATE = "degenerate_denominator"
OUTSIDE_WINDOW = "outside_efficiency_window"


@dataclass(frozen=True)
class BoundRatios:
    """Lower bound and reverse bound over the thermal variance sum, at one bath."""

    lower: float
    upper: float

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper}


@dataclass(frozen=True)
class EfficiencyBoundPoint:
    half_width_L: float
    u_T1: float
    u_T2: float
    eta_lower: float
    eta_upper: float
    flag: str
    carnot: float = math.nan

    @property
    def valid(self) -> bool:
        return self.flag == VALID

    def to_dict(self) -> dict:
        return {
            "half_width_L": self.half_width_L,
            "u_T1": self.u_T1,
            "u_T2": self.u_T2,
            "eta_lower": self.eta_lower,
            "eta_upper": self.eta_upper,
            "carnot": self.carnot,
            "flag": self.flag,
        }


@dataclass(frozen=True)
class EfficiencyBounds:
    """
    η bracket along an L sweep, plotted against the closed-form ΔX_T + ΔP_T at T1.

    f and g stay the closed-form n̄² weights and the isothermal logarithms are
    the entropy changes ΔS/k_B of the cycle's isotherms. The uncertainty
    bounds enter through the isochoric share (f - g)/2 of the heat input,
    scaled by the ratio of each bound to the thermal variance sum: the lower
    bound gives eta_upper, the reverse bound gives eta_lower.
    """

    T1: float
    T2: float
    method: Method
    sweep_variable: str = "u_T1"
    corner_rule: str = "isochoric share scaled by min lower-bound ratio (eta_upper) and max reverse-bound ratio (eta_lower)"
    points: List[EfficiencyBoundPoint] = field(default_factory=list)

    @property
    def eta_lower(self) -> List[float]:
        return [p.eta_lower for p in self.points]

    @property
    def eta_upper(self) -> List[float]:
        return [p.eta_upper for p in self.points]

    def to_dict(self) -> dict:
        return {
            "T1": self.T1,
            "T2": self.T2,
            "method": self.method.value,
            "sweep_variable": self.sweep_variable,
            "corner_rule": self.corner_rule,
            "points": [p.to_dict() for p in self.points],
        }


def bound_ratios(cfg: EngineConfig, temperature: float, basis_size: int = 64) -> BoundRatios:
    """Both thermal bounds divided by ΔX_T² + ΔP_T², so 0 < lower <= 1 <= upper."""
    variance_sum = thermal_variance_sum(cfg, temperature)
    if not variance_sum > 0:
        raise DomainError(f"thermal variance sum {variance_sum:.3e} at T={temperature} K is not positive")
    lower = thermal_lower_bound(cfg, temperature, basis_size) / variance_sum
    upper = thermal_moment_sum(cfg, temperature) / variance_sum
    if not lower > 0:
        raise DomainError(f"lower-bound ratio {lower:.3e} at T={temperature} K is not positive")
    return BoundRatios(lower=lower, upper=upper)


def _scales(cfg: EngineConfig, T1: float, T2: float, basis_size: int) -> Tuple[float, float]:
    hot, cold = bound_ratios(cfg, T1, basis_size), bound_ratios(cfg, T2, basis_size)
    return min(hot.lower, cold.lower), max(hot.upper, cold.upper)


def efficiency_bound_point(
    cfg: EngineConfig,
    T1: float,
    T2: float,
    *,
    basis_size: int = 64,
    method: Method = Method.ORACLE_SERIES,
) -> EfficiencyBoundPoint:
    L = cfg.half_width_L
    carnot = 1.0 - T2 / T1
    try:
        u1 = UncertaintyMap.at(cfg, T1).closed_sum_float(beta_of(cfg, T1))
        u2 = UncertaintyMap.at(cfg, T2).closed_sum_float(beta_of(cfg, T2))
        f, g = uncertainty_weights(cfg, T1, T2)
        low_scale, high_scale = _scales(cfg, T1, T2, basis_size)
    except DomainError as exc:
        logger.debug("efficiency bounds at L=%.4e m: %s", L, exc)
        return EfficiencyBoundPoint(L, math.nan, math.nan, math.nan, math.nan, NEGATIVE_VARIANCE, carnot)

    q_hot, q_cold = isothermal_entropy_changes(cfg, T1, T2, method)
    try:
        eta_upper = efficiency_from_weights(f, g, q_hot, q_cold, isochoric_scale=low_scale)
        eta_lower = efficiency_from_weights(f, g, q_hot, q_cold, isochoric_scale=high_scale)
    except DegenerateDenominator as exc:
        logger.debug("efficiency bounds at L=%.4e m: %s", L, exc)
        return EfficiencyBoundPoint(L, u1, u2, math.nan, math.nan, DEGENERATE, carnot)

    if not 0.0 <= eta_lower <= eta_upper <= carnot:
        logger.debug(
            "efficiency bracket [%.6e, %.6e] at L=%.4e m leaves [0, %.6e]", eta_lower, eta_upper, L, carnot
        )
        return EfficiencyBoundPoint(L, u1, u2, eta_lower, eta_upper, OUTSIDE_WINDOW, carnot)
    return EfficiencyBoundPoint(L, u1, u2, eta_lower, eta_upper, VALID, carnot)


def efficiency_bounds(
    cfg: EngineConfig,
    T1: float,
    T2: float,
    half_widths: Iterable[float],
    *,
    basis_size: int = 64,
    method: Method = Method.ORACLE_SERIES,
) -> EfficiencyBounds:
    _check_order(T1, T2)
    points = []
    for L in half_widths:
        try:
            point = efficiency_bound_point(cfg.with_half_width(L), T1, T2, basis_size=basis_size, method=method)
        except EngineError as exc:
            logger.warning("efficiency bounds failed at L=%.4e m: %s", L, exc)
            raise
        points.append(point)
    return EfficiencyBounds(T1=float(T1), T2=float(T2), method=method, points=points)
