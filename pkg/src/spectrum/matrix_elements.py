from __future__ import annotations

import math

import numpy as np

from src.core.constants import EngineConfig
from src.core.exceptions import LevelOutOfRange

from .levels import fv_plus_array


def _grids(n_max: int):
    if n_max < 1:
        raise LevelOutOfRange(f"basis size must be >= 1, got {n_max!r}")
    idx = np.arange(1, n_max + 1, dtype=float)
    n, m = np.meshgrid(idx, idx, indexing="ij")
    odd = ((n + m) % 2) == 1
    return idx, n, m, odd


def position_elements(cfg: EngineConfig, n_max: int, *, shift: float = 0.0, centered: bool = True) -> np.ndarray:
    """
    |⟨ψ_n|x|ψ_m⟩| for n, m = 1..n_max on the box [shift, shift + 2L].

    Sine-basis integrals scaled by φ⁺_n φ⁺_m. With ``centered`` the diagonal is
    the mean-subtracted one, i.e. zero.
    """
    idx, n, m, odd = _grids(n_max)
    L = cfg.half_width_L
    phi = fv_plus_array(idx, cfg)
    scale = np.outer(phi, phi)
    elements = np.zeros_like(n)
    diff2 = (n * n - m * m) ** 2
    elements[odd] = 16.0 * L * n[odd] * m[odd] / (math.pi**2 * diff2[odd])
    elements *= scale
    if not centered:
        np.fill_diagonal(elements, np.abs((L + shift) * phi * phi))
    return elements


def momentum_elements(cfg: EngineConfig, n_max: int, *, centered: bool = True) -> np.ndarray:
    """|⟨ψ_n|p|ψ_m⟩| for n, m = 1..n_max; the diagonal ⟨p⟩ vanishes for every state."""
    idx, n, m, odd = _grids(n_max)
    hbar = cfg.constants.hbar
    L = cfg.half_width_L
    phi = fv_plus_array(idx, cfg)
    elements = np.zeros_like(n)
    elements[odd] = 2.0 * hbar * n[odd] * m[odd] / (L * np.abs(n[odd] ** 2 - m[odd] ** 2))
    return elements * np.outer(phi, phi)
