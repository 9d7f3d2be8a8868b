from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.constants import EngineConfig, SpectrumMode
from src.core.exceptions import LevelOutOfRange, NegativeVariance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelData:
    n: int
    p_n: float
    energy_exact: float
    energy_expanded: float
    phi_plus: float
    eta_plus: float
    x_mean: float
    x2_mean: float
    p_mean: float
    p2_mean: float
    excitation_exact: float
    excitation_expanded: float
    mode: SpectrumMode = SpectrumMode.EXPANDED

    @property
    def energy(self) -> float:
        return self.energy_exact if self.mode is SpectrumMode.EXACT else self.energy_expanded

    @property
    def excitation(self) -> float:
        """Energy above the rest energy, free of the mc² cancellation."""
        return self.excitation_exact if self.mode is SpectrumMode.EXACT else self.excitation_expanded

    @property
    def x_variance(self) -> float:
        return self.x2_mean - self.x_mean**2

    @property
    def p_variance(self) -> float:
        return self.p2_mean - self.p_mean**2

    @property
    def variance_valid(self) -> bool:
        return self.x_variance > 0 and self.p_variance > 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p_n": self.p_n,
            "energy_exact": self.energy_exact,
            "energy_expanded": self.energy_expanded,
            "phi_plus": self.phi_plus,
            "eta_plus": self.eta_plus,
            "x_mean": self.x_mean,
            "x2_mean": self.x2_mean,
            "p_mean": self.p_mean,
            "p2_mean": self.p2_mean,
            "mode": self.mode.value,
        }


@dataclass(frozen=True)
class LevelArrays:
    """Vectorised per-level quantities for a block of quantum numbers."""

    n: np.ndarray
    excitation: np.ndarray
    phi_plus: np.ndarray
    x_mean: np.ndarray
    x2_mean: np.ndarray
    p2_mean: np.ndarray


def momentum(n: float | np.ndarray, cfg: EngineConfig) -> float | np.ndarray:
    """p_n from p·(2L) = nπħ."""
    return n * math.pi * cfg.constants.hbar / (2.0 * cfg.half_width_L)


def excitation_energy(n: float | np.ndarray, cfg: EngineConfig, mode: SpectrumMode) -> float | np.ndarray:
    """E_n - mc² for either spectrum branch."""
    if mode is SpectrumMode.EXPANDED:
        return cfg.alpha() * n * n
    return _exact_excitation(n, cfg)


def _exact_excitation(n: float | np.ndarray, cfg: EngineConfig) -> float | np.ndarray:
    # √((pc)² + (mc²)²) - mc² rewritten as (pc)² / (E_p + mc²)
    pc = momentum(n, cfg) * cfg.constants.c
    mc2 = cfg.rest_energy
    return pc * pc / (np.sqrt(pc * pc + mc2 * mc2) + mc2)


def _fv_components(excitation: float | np.ndarray, rest_energy: float):
    eps = excitation / rest_energy
    u = np.sqrt(1.0 + eps)  # √(E_p / mc²)
    delta = eps / (u + 1.0)  # u - 1 without cancellation
    phi = 1.0 + delta * delta / (2.0 * u)
    eta = -eps / (2.0 * u)
    return phi, eta


def fv_plus(n: int, cfg: EngineConfig) -> float:
    """φ⁺ = (E_p + mc²) / (2√(mc² E_p)) at the exact relativistic E_p; always >= 1."""
    _check_level(n)
    phi, _ = _fv_components(_exact_excitation(float(n), cfg), cfg.rest_energy)
    return float(phi)


def fv_minus_component(n: int, cfg: EngineConfig) -> float:
    """η⁺ = (mc² - E_p) / (2√(mc² E_p)), the lower Feshbach–Villars component."""
    _check_level(n)
    _, eta = _fv_components(_exact_excitation(float(n), cfg), cfg.rest_energy)
    return float(eta)


def fv_plus_array(n: np.ndarray, cfg: EngineConfig) -> np.ndarray:
    phi, _ = _fv_components(_exact_excitation(n, cfg), cfg.rest_energy)
    return phi


def position_moments(n: float | np.ndarray, phi: float | np.ndarray, cfg: EngineConfig):
    """(⟨x⟩, ⟨x²⟩) of the φ⁺-scaled box state."""
    L = cfg.half_width_L
    phi2 = phi * phi
    x_mean = L * phi2
    x2_mean = 4.0 * L * L * phi2 * (1.0 / 3.0 - 1.0 / (2.0 * (n * math.pi) ** 2))
    return x_mean, x2_mean


def momentum_square(n: float | np.ndarray, cfg: EngineConfig) -> float | np.ndarray:
    kinetic = momentum(n, cfg)
    return kinetic * kinetic + cfg.rest_momentum_term


def level(n: int, cfg: EngineConfig, mode: Optional[SpectrumMode] = None) -> LevelData:
    _check_level(n)
    mode = mode or cfg.spectrum
    mc2 = cfg.rest_energy
    exact = float(_exact_excitation(float(n), cfg))
    expanded = cfg.alpha() * n * n
    phi, eta = _fv_components(exact, mc2)
    x_mean, x2_mean = position_moments(float(n), float(phi), cfg)
    data = LevelData(
        n=n,
        p_n=float(momentum(float(n), cfg)),
        energy_exact=mc2 + exact,
        energy_expanded=mc2 + expanded,
        phi_plus=float(phi),
        eta_plus=float(eta),
        x_mean=float(x_mean),
        x2_mean=float(x2_mean),
        p_mean=0.0,
        p2_mean=float(momentum_square(float(n), cfg)),
        excitation_exact=exact,
        excitation_expanded=expanded,
        mode=mode,
    )
    if not data.variance_valid:
        logger.debug("level n=%d has a non-positive position variance (phi+=%.6f)", n, data.phi_plus)
    return data


def level_arrays(n: np.ndarray, cfg: EngineConfig, mode: Optional[SpectrumMode] = None) -> LevelArrays:
    mode = mode or cfg.spectrum
    n = np.asarray(n, dtype=float)
    exact = _exact_excitation(n, cfg)
    phi, _ = _fv_components(exact, cfg.rest_energy)
    excitation = exact if mode is SpectrumMode.EXACT else cfg.alpha() * n * n
    x_mean, x2_mean = position_moments(n, phi, cfg)
    return LevelArrays(
        n=n,
        excitation=excitation,
        phi_plus=phi,
        x_mean=x_mean,
        x2_mean=x2_mean,
        p2_mean=momentum_square(n, cfg),
    )


def state_uncertainty(n: int, cfg: EngineConfig) -> float:
    """Δx·Δp of level n, in units of ħ."""
    data = level(n, cfg)
    if data.x_variance <= 0:
        raise NegativeVariance(
            f"position variance of level {n} is {data.x_variance:.3e} (phi+={data.phi_plus:.6f})"
        )
    product = math.sqrt(data.x_variance) * math.sqrt(data.p_variance)
    return product / cfg.constants.hbar


def _check_level(n: int) -> None:
    if int(n) != n or n < 1:
        raise LevelOutOfRange(f"quantum number must be an integer >= 1, got {n!r}")
