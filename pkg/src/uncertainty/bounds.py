from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.constants import EngineConfig, SpectrumMode, thermal_point
from src.core.exceptions import BadBasisSize, DegenerateDenominator, LevelOutOfRange
from src.ensemble.boltzmann import boltzmann_sums
from src.ensemble.partition import thermal_averages
from src.spectrum.levels import excitation_energy, level
from src.spectrum.matrix_elements import momentum_elements, position_elements

from .thermal import closed_form_mean_level, closed_form_phi, closed_variance_p, closed_variance_x

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float
    subject: str

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "subject": self.subject}


@dataclass(frozen=True)
class DunklWilliamsRecord:
    """Both sides of ΔA² + ΔB² ≤ 2Δ(A-B)²/(1 - Cov/(ΔAΔB)) - 2ΔAΔB."""

    subject: str
    lhs: float
    rhs: float
    covariance: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.rhs >= self.lhs * (1.0 - 1e-12)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "covariance": self.covariance,
            "slack": self.slack,
        }


def _bound_columns(cfg: EngineConfig, basis_size: int, shift: float = 0.0) -> np.ndarray:
    """½Σ_n(|⟨n|X̄|k⟩| + |⟨n|P̄|k⟩|)² for every k = 1..N."""
    x = position_elements(cfg, basis_size, shift=shift)
    p = momentum_elements(cfg, basis_size)
    return 0.5 * ((x + p) ** 2).sum(axis=0)


def sum_variance_lower_bound(cfg: EngineConfig, k: int, basis_size: int, *, shift: float = 0.0) -> float:
    if int(k) != k or k < 1:
        raise LevelOutOfRange(f"state index must be an integer >= 1, got {k!r}")
    if basis_size < k:
        raise BadBasisSize(f"basis of {basis_size} states cannot represent state {k}")
    return float(_bound_columns(cfg, basis_size, shift)[k - 1])


def state_variance_sum(cfg: EngineConfig, n: int) -> float:
    data = level(n, cfg)
    return data.x_variance + data.p_variance


def reverse_bound_state(cfg: EngineConfig, n: int) -> float:
    """4L²φ⁺²(1/3 - 1/(2(nπ)²)) + π²ħ²n²/(4L²) + rest term, i.e. ⟨x²⟩ + ⟨p²⟩ of level n."""
    data = level(n, cfg)
    L = cfg.half_width_L
    hbar = cfg.constants.hbar
    position = 4.0 * L * L * data.phi_plus**2 * (1.0 / 3.0 - 1.0 / (2.0 * (n * math.pi) ** 2))
    return position + math.pi**2 * hbar * hbar * n * n / (4.0 * L * L) + cfg.rest_momentum_term


def reverse_bound_thermal(cfg: EngineConfig, temperature: float) -> float:
    point = thermal_point(cfg, temperature)
    s = point.alpha_beta
    n_mean = closed_form_mean_level(s)
    phi = closed_form_phi(cfg, n_mean)
    L = cfg.half_width_L
    hbar = cfg.constants.hbar
    phi2 = phi * phi
    return (
        -8.0 * L * L * math.sqrt(s) / math.pi**2.5 * phi2 * (math.exp(-s) - math.sqrt(math.pi * s))
        + 8.0 * L * L * phi2 / 3.0
        - 2.0 * L * L * phi2 * phi2
        + hbar * hbar * n_mean * n_mean * math.pi**3 / (4.0 * L * L)
        + 2.0 * cfg.rest_momentum_term
    )


def thermal_variance_sum(cfg: EngineConfig, temperature: float) -> float:
    averages = thermal_averages(cfg, temperature)
    return averages.x_variance_T + averages.p_variance_T


def thermal_moment_sum(cfg: EngineConfig, temperature: float) -> float:
    """Boltzmann average of the per-state reverse bound, ⟨x²⟩_T + ⟨p²⟩_T."""
    averages = thermal_averages(cfg, temperature)
    return averages.x2_mean_T + averages.p2_mean_T


def thermal_lower_bound(
    cfg: EngineConfig,
    temperature: float,
    basis_size: int = 64,
    *,
    shift: float = 0.0,
    mode: Optional[SpectrumMode] = None,
) -> float:
    """
    Boltzmann average of the per-state lower bound over k = 1..basis_size.

    States above the basis are dropped, which only lowers the value; by the law
    of total variance it stays below the thermal variance sum.
    """
    if basis_size < 1:
        raise BadBasisSize(f"basis size must be >= 1, got {basis_size!r}")
    point = thermal_point(cfg, temperature)
    k = np.arange(1, basis_size + 1, dtype=float)
    excitation = excitation_energy(k, cfg, mode or cfg.spectrum)
    weights = np.exp(-point.beta * (excitation - excitation[0]))
    # normalised by the full partition sum, not the truncated one
    total = math.exp(boltzmann_sums(cfg, point.beta, mode=mode).log_sum_rel)
    bounds = _bound_columns(cfg, basis_size, shift)
    return float(np.dot(weights, bounds) / total)


def dunkl_williams(var_a: float, var_b: float, covariance: float, subject: str) -> DunklWilliamsRecord:
    sigma_a, sigma_b = math.sqrt(var_a), math.sqrt(var_b)
    denominator = 1.0 - covariance / (sigma_a * sigma_b)
    difference = var_a + var_b - 2.0 * covariance  # Δ(A-B)²
    if denominator <= 0 or difference <= 0:
        raise DegenerateDenominator(
            f"{subject}: 1 - Cov/(ΔAΔB) = {denominator:.3e}, Δ(A-B)² = {difference:.3e}"
        )
    rhs = 2.0 * difference / denominator - 2.0 * sigma_a * sigma_b
    return DunklWilliamsRecord(subject=subject, lhs=var_a + var_b, rhs=rhs, covariance=covariance)


def dunkl_williams_check(cfg: EngineConfig, n: int) -> DunklWilliamsRecord:
    """Per-state check; ⟨{x,p}⟩ vanishes for the real box eigenfunctions, so Cov(X,P) = 0."""
    data = level(n, cfg)
    return dunkl_williams(data.x_variance, data.p_variance, 0.0, f"state n={n}")


def thermal_dunkl_williams(cfg: EngineConfig, temperature: float) -> DunklWilliamsRecord:
    averages = thermal_averages(cfg, temperature)
    return dunkl_williams(averages.x_variance_T, averages.p_variance_T, 0.0, f"thermal T={temperature}")


def state_bounds(cfg: EngineConfig, n: int, basis_size: int) -> BoundPair:
    return BoundPair(
        lower=sum_variance_lower_bound(cfg, n, basis_size),
        upper=reverse_bound_state(cfg, n),
        subject=f"state n={n}",
    )


def thermal_bounds(cfg: EngineConfig, temperature: float, basis_size: int = 64) -> BoundPair:
    return BoundPair(
        lower=thermal_lower_bound(cfg, temperature, basis_size),
        upper=reverse_bound_thermal(cfg, temperature),
        subject=f"thermal T={temperature}",
    )


def closed_variance_sum(cfg: EngineConfig, temperature: float) -> float:
    """ΔX_T² + ΔP_T² of the closed forms; the thermal reverse bound is exactly twice this."""
    point = thermal_point(cfg, temperature)
    n_mean = closed_form_mean_level(point.alpha_beta)
    phi = closed_form_phi(cfg, n_mean)
    return closed_variance_x(cfg.half_width_L, phi, point.alpha_beta) + closed_variance_p(cfg, n_mean)


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
]
