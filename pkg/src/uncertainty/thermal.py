from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from src.core.constants import EngineConfig, Well, thermal_point
from src.core.exceptions import BadParameter, NegativeVariance
from src.ensemble.partition import Method, thermal_averages
from src.numerics.special import erfc
from src.spectrum.levels import fv_plus

logger = logging.getLogger(__name__)

_PI_5_2 = math.pi**2.5


class ValidityFlag(Enum):
    VALID = "valid"
    NEGATIVE_VARIANCE = "negative_variance_regime"


@dataclass(frozen=True)
class UncertaintyReport:
    dx: float
    dp: float
    product: float
    sum_normalized: float
    method: Method
    validity_flag: ValidityFlag
    temperature: float
    half_width_L: float
    variance_x: float
    variance_p: float
    n_mean: float

    @property
    def valid(self) -> bool:
        return self.validity_flag is ValidityFlag.VALID

    def to_dict(self) -> dict:
        return {
            "dx": self.dx,
            "dp": self.dp,
            "product": self.product,
            "sum_normalized": self.sum_normalized,
            "method": self.method.value,
            "validity_flag": self.validity_flag.value,
            "temperature": self.temperature,
            "half_width_L": self.half_width_L,
            "variance_x": self.variance_x,
            "variance_p": self.variance_p,
            "n_mean": self.n_mean,
        }


def thermal_scales(cfg: EngineConfig, temperature: float) -> Tuple[float, float]:
    """(ħ/√(m k_B T), √(m k_B T)); their product is ħ."""
    momentum_scale = math.sqrt(cfg.mass * cfg.constants.k_B * temperature)
    return cfg.constants.hbar / momentum_scale, momentum_scale


def normalized_sum(cfg: EngineConfig, temperature: float, dx: float, dp: float) -> float:
    """ΔX_T/x_T + ΔP_T/p_T on the thermal length and momentum scales."""
    length_scale, momentum_scale = thermal_scales(cfg, temperature)
    return dx / length_scale + dp / momentum_scale


def closed_form_mean_level(alpha_beta: float) -> float:
    return 1.0 / math.sqrt(math.pi * alpha_beta)


def closed_form_phi(cfg: EngineConfig, n_mean: float) -> float:
    """φ⁺ at round(n̄), never below the ground level."""
    return fv_plus(max(1, int(round(n_mean))), cfg)


def closed_variance_x(L: float, phi: float, alpha_beta: float) -> float:
    """-φ²(4L²√(αβ)/π^{5/2})(e^{-αβ} - √(παβ)) + L²φ²(4/3 - φ²), unchecked."""
    s = alpha_beta
    phi2 = phi * phi
    tail = math.exp(-s) - math.sqrt(math.pi * s)
    return -phi2 * (4.0 * L * L * math.sqrt(s) / _PI_5_2) * tail + L * L * phi2 * (4.0 / 3.0 - phi2)


def closed_variance_x_erfc(L: float, phi: float, alpha_beta: float) -> float:
    """The intermediate form that still carries erfc(√(αβ)) before it is set to 1."""
    s = alpha_beta
    phi2 = phi * phi
    numerator = math.exp(-s) - math.sqrt(math.pi * s) * erfc(math.sqrt(s))
    return (
        -(2.0 * L * L / math.pi**2) * phi2 * numerator / (0.5 * math.sqrt(math.pi / s))
        + 4.0 * L * L * phi2 / 3.0
        - L * L * phi2 * phi2
    )


def closed_variance_p(cfg: EngineConfig, n_mean: float) -> float:
    """π³ħ²n̄²/(8L²) plus the rest term of the configured momentum convention."""
    L = cfg.half_width_L
    hbar = cfg.constants.hbar
    return math.pi**3 * hbar * hbar * n_mean * n_mean / (8.0 * L * L) + cfg.rest_momentum_term


def thermal_variance_x(
    cfg: EngineConfig,
    temperature: float,
    method: Method = Method.ORACLE_SERIES,
    well: Well = Well.SINGLE,
) -> float:
    if method is Method.ORACLE_SERIES:
        return thermal_averages(cfg, temperature, well).x_variance_T
    _require_closed(method)
    point = thermal_point(cfg, temperature, well)
    phi = closed_form_phi(cfg, closed_form_mean_level(point.alpha_beta))
    variance = closed_variance_x(cfg.half_width_L, phi, point.alpha_beta)
    if variance < 0:
        raise NegativeVariance(
            f"closed-form position variance {variance:.3e} m² at T={temperature} K, L={cfg.half_width_L:.3e} m"
        )
    return variance


def thermal_variance_p(
    cfg: EngineConfig,
    temperature: float,
    method: Method = Method.ORACLE_SERIES,
    well: Well = Well.SINGLE,
) -> float:
    if method is Method.ORACLE_SERIES:
        return thermal_averages(cfg, temperature, well).p_variance_T
    _require_closed(method)
    point = thermal_point(cfg, temperature, well)
    return closed_variance_p(cfg, closed_form_mean_level(point.alpha_beta))


def uncertainty_report(
    cfg: EngineConfig,
    temperature: float,
    method: Method = Method.ORACLE_SERIES,
    well: Well = Well.SINGLE,
) -> UncertaintyReport:
    if method is Method.ORACLE_SERIES:
        averages = thermal_averages(cfg, temperature, well)
        var_x, var_p, n_mean = averages.x_variance_T, averages.p_variance_T, averages.n_mean
    else:
        _require_closed(method)
        point = thermal_point(cfg, temperature, well)
        n_mean = closed_form_mean_level(point.alpha_beta)
        phi = closed_form_phi(cfg, n_mean)
        var_x = closed_variance_x(cfg.half_width_L, phi, point.alpha_beta)
        var_p = closed_variance_p(cfg, n_mean)
    return _report(cfg, temperature, method, var_x, var_p, n_mean)


def sum_uncertainty_fixed_n(cfg: EngineConfig, n_bar: float, temperature: float) -> float:
    """
    Normalized ΔX_T + ΔP_T with n̄ held fixed in the momentum term.

    The position term keeps the αβ of the given temperature, so passing
    n̄ = 1/√(παβ(T)) gives back the closed-form report's sum.
    """
    if not (math.isfinite(n_bar) and n_bar >= 1.0):
        raise BadParameter(f"n_bar must be >= 1, got {n_bar!r}")
    point = thermal_point(cfg, temperature)
    phi = closed_form_phi(cfg, n_bar)
    var_x = closed_variance_x(cfg.half_width_L, phi, point.alpha_beta)
    var_p = closed_variance_p(cfg, n_bar)
    if var_x < 0:
        raise NegativeVariance(f"position variance {var_x:.3e} m² at n_bar={n_bar}, L={cfg.half_width_L:.3e} m")
    return normalized_sum(cfg, temperature, math.sqrt(var_x), math.sqrt(var_p))


def _report(
    cfg: EngineConfig,
    temperature: float,
    method: Method,
    var_x: float,
    var_p: float,
    n_mean: float,
) -> UncertaintyReport:
    if var_x <= 0 or var_p <= 0:
        logger.debug(
            "negative variance regime at T=%s K, L=%.4e m: var_x=%.3e var_p=%.3e",
            temperature,
            cfg.half_width_L,
            var_x,
            var_p,
        )
        flag = ValidityFlag.NEGATIVE_VARIANCE
        dx = dp = product = total = math.nan
    else:
        flag = ValidityFlag.VALID
        dx = math.sqrt(var_x)
        dp = math.sqrt(var_p)
        product = dx * dp
        total = normalized_sum(cfg, temperature, dx, dp)
    return UncertaintyReport(
        dx=dx,
        dp=dp,
        product=product,
        sum_normalized=total,
        method=method,
        validity_flag=flag,
        temperature=float(temperature),
        half_width_L=cfg.half_width_L,
        variance_x=var_x,
        variance_p=var_p,
        n_mean=n_mean,
    )


def _require_closed(method: Method) -> None:
    if method is not Method.PAPER_CLOSED_FORM:
        raise BadParameter(f"thermal variances support the oracle and paper methods, got {method.value!r}")
