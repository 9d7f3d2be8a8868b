from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.constants import EngineConfig, SpectrumMode, Well
from src.numerics.series import sum_blocks
from src.spectrum.levels import excitation_energy, level_arrays

logger = logging.getLogger(__name__)

# Row order of the block sums.
_W, _N, _N2, _X, _X2, _P2, _E = range(7)


@dataclass(frozen=True)
class BoltzmannState:
    """
    Boltzmann-weighted sums for one well at one β.

    Weights are referenced to the lowest level of the well, e^{-β(ε_n - ε_g)},
    so log_sum_rel and mean_rel stay finite for any αβ.
    """

    beta: float
    well: Well
    mode: SpectrumMode
    ground_excitation: float
    log_sum_rel: float
    mean_rel: float
    n_mean: float
    n2_mean: float
    x_mean: float
    x2_mean: float
    p2_mean: float
    terms_used: int
    truncation_estimate: float

    @property
    def log_z(self) -> float:
        """ln Σ g_n e^{-β(E_n - mc²)}, rest energy factored out."""
        return -self.beta * self.ground_excitation + self.log_sum_rel

    @property
    def thermal_energy(self) -> float:
        """⟨E⟩ - mc²."""
        return self.ground_excitation + self.mean_rel

    @property
    def x_variance(self) -> float:
        return self.x2_mean - self.x_mean**2


def well_levels(j: np.ndarray, well: Well) -> np.ndarray:
    """Quantum numbers populated in the well; the partition keeps the even ones."""
    return 2.0 * j if well is Well.PARTITIONED else j


def degeneracy(well: Well) -> float:
    return 2.0 if well is Well.PARTITIONED else 1.0


def boltzmann_sums(
    cfg: EngineConfig,
    beta: float,
    well: Well = Well.SINGLE,
    mode: Optional[SpectrumMode] = None,
    *,
    max_level: Optional[int] = None,
) -> BoltzmannState:
    """Direct summation over the spectrum; ``max_level`` truncates to a finite toy spectrum."""
    mode = mode or cfg.spectrum
    ground_n = float(well_levels(np.array([1.0]), well)[0])
    ground = float(excitation_energy(ground_n, cfg, mode))

    def block(j: np.ndarray) -> np.ndarray:
        arrays = level_arrays(well_levels(j, well), cfg, mode)
        rel = arrays.excitation - ground
        w = np.exp(-beta * rel)
        return np.vstack(
            [
                w,
                w * arrays.n,
                w * arrays.n * arrays.n,
                w * arrays.x_mean,
                w * arrays.x2_mean,
                w * arrays.p2_mean,
                w * rel,
            ]
        )

    if max_level is not None:
        count = int(max_level // 2) if well is Well.PARTITIONED else int(max_level)
        sums = block(np.arange(1, max(count, 1) + 1, dtype=float)).sum(axis=1)
        terms_used = count
        truncation = 0.0
    else:
        alpha_beta = cfg.alpha() * beta
        result = sum_blocks(
            block,
            rows=7,
            rel_tol=cfg.series_rel_tol,
            max_terms=cfg.series_max_terms,
            min_terms=math.ceil(1.0 / math.sqrt(alpha_beta)) + 1,
        )
        sums = result.sums
        terms_used = result.terms_used
        truncation = float(result.tail_estimates[_W] / sums[_W])

    total = sums[_W]
    logger.debug(
        "boltzmann sums well=%s mode=%s beta=%.4e: %d terms", well.value, mode.value, beta, terms_used
    )
    return BoltzmannState(
        beta=beta,
        well=well,
        mode=mode,
        ground_excitation=ground,
        log_sum_rel=math.log(degeneracy(well) * total),
        mean_rel=float(sums[_E] / total),
        n_mean=float(sums[_N] / total),
        n2_mean=float(sums[_N2] / total),
        x_mean=float(sums[_X] / total),
        x2_mean=float(sums[_X2] / total),
        p2_mean=float(sums[_P2] / total),
        terms_used=terms_used,
        truncation_estimate=truncation,
    )
