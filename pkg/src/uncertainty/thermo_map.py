"""
Thermodynamic potentials written through the thermal uncertainty sum ΔX_T + ΔP_T.

In SI units the compensator C_T cancels the uncertainty sum to roughly 55
significant digits (the prefactor 16c√(2mc)/(π³ħ²) is of order 1e65), so every
mapped quantity is evaluated with mpmath at ``MAP_DPS`` digits and only the
final values are rounded to floats. φ⁺ is frozen at the state's round(n̄) so the
potentials are smooth functions of β for the derivative identities.
"""

from __future__ import annotations

import logging
import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional

from mpmath import mp, mpf

from src.core.constants import EngineConfig, beta_of, thermal_point
from src.core.exceptions import DomainError
from src.ensemble.partition import Method

from .thermal import (
    closed_form_mean_level,
    closed_form_phi,
    closed_variance_p,
    closed_variance_x,
    uncertainty_report,
)

logger = logging.getLogger(__name__)

MAP_DPS = 100

# mpmath keeps its working precision on one shared context
_PRECISION_LOCK = threading.RLock()


@contextmanager
def _map_precision() -> Iterator[None]:
    with _PRECISION_LOCK, mp.workdps(MAP_DPS):
        yield


@dataclass(frozen=True)
class UncertaintyMappedState:
    temperature: float
    u_sum: float
    c_t: float
    z_mapped: float
    u_mapped: float
    f_mapped: float
    s_mapped: float

    def to_dict(self) -> dict:
        return {
            "temperature": self.temperature,
            "u_sum": self.u_sum,
            "c_t": self.c_t,
            "z_mapped": self.z_mapped,
            "u_mapped": self.u_mapped,
            "f_mapped": self.f_mapped,
            "s_mapped": self.s_mapped,
        }


class UncertaintyMap:
    """Closed-form uncertainty sum and the potentials built on it, as functions of β."""

    def __init__(self, cfg: EngineConfig, phi: float) -> None:
        self.cfg = cfg
        self.phi = phi
        with _map_precision():
            k = cfg.constants
            self._L = mpf(cfg.half_width_L)
            self._phi2 = mpf(phi) ** 2
            self._alpha = mpf(cfg.alpha())
            self._kB = mpf(k.k_B)
            self._mc2 = mpf(cfg.mass) * mpf(k.c) ** 2
            self._rest_p = mpf(cfg.rest_momentum_term)
            self._p_scale = mp.pi**2 * mpf(k.hbar) ** 2 / (8 * self._L**2)
            root = mpf(k.c) * mp.sqrt(2 * mpf(cfg.mass) * mpf(k.c))
            self._K = 16 * root / (mp.pi**3 * mpf(k.hbar) ** 2)
            self._K_free = 4 * root / (mp.pi * mpf(k.hbar) ** 2)
        if phi * phi >= 4.0 / 3.0:
            raise DomainError(f"phi+² = {phi * phi:.6f} must stay below 4/3")

    @classmethod
    def at(cls, cfg: EngineConfig, temperature: float) -> "UncertaintyMap":
        point = thermal_point(cfg, temperature)
        return cls(cfg, closed_form_phi(cfg, closed_form_mean_level(point.alpha_beta)))

    @property
    def prefactor(self) -> float:
        """16c√(2mc)/(π³ħ²)."""
        return float(self._K)

    # -- closed-form pieces, all in mp -------------------------------------

    def _var_x(self, s):
        tail = mp.exp(-s) - mp.sqrt(mp.pi * s)
        return -self._phi2 * 4 * self._L**2 * mp.sqrt(s) / mp.pi**2.5 * tail + self._L**2 * self._phi2 * (
            mpf(4) / 3 - self._phi2
        )

    def _var_x_ds(self, s):
        tail = mp.exp(-s) - mp.sqrt(mp.pi * s)
        tail_ds = -mp.exp(-s) - mp.sqrt(mp.pi) / (2 * mp.sqrt(s))
        return -self._phi2 * 4 * self._L**2 / mp.pi**2.5 * (tail / (2 * mp.sqrt(s)) + mp.sqrt(s) * tail_ds)

    def _var_p(self, s):
        return self._p_scale / s + self._rest_p

    def _var_p_ds(self, s):
        return -self._p_scale / s**2

    def _pieces(self, beta):
        s = self._alpha * mpf(beta)
        var_x = self._var_x(s)
        var_p = self._var_p(s)
        if var_x <= 0 or var_p <= 0:
            raise DomainError(f"uncertainty sum undefined at beta={float(beta):.6e}: variance below zero")
        dx, dp = mp.sqrt(var_x), mp.sqrt(var_p)
        # d/dβ = α d/ds
        dx_db = self._alpha * self._var_x_ds(s) / (2 * dx)
        dp_db = self._alpha * self._var_p_ds(s) / (2 * dp)
        nbar2 = 1 / (mp.pi * s)
        nbar2_db = -self._alpha / (mp.pi * s**2)
        c_t = nbar2 / self._K - (dx + dp)
        c_t_db = nbar2_db / self._K - (dx_db + dp_db)
        return dx, dp, dx_db, dp_db, c_t, c_t_db

    def _radicand(self, beta):
        dx, dp, _, _, c_t, _ = self._pieces(beta)
        value = self._K * (dx + dp + c_t)
        if value <= 0:
            raise DomainError(f"non-positive radicand {float(value):.3e} at beta={float(beta):.6e}")
        return value

    # -- public β-functions ------------------------------------------------

    def u_sum(self, beta: float) -> float:
        with _map_precision():
            dx, dp, *_ = self._pieces(beta)
            return float(dx + dp)

    def c_t(self, beta: float) -> float:
        with _map_precision():
            return float(self._pieces(beta)[4])

    def radicand(self, beta: float, u_sum: Optional[float] = None) -> float:
        """16c√(2mc)/(π³ħ²)·(ΔX_T + ΔP_T + C_T); ``u_sum`` replaces the closed-form sum."""
        with _map_precision():
            if u_sum is None:
                return float(self._radicand(beta))
            # Anchored to the float closed-form sum: that exact input maps back to n̄².
            s = self._alpha * mpf(beta)
            reference = self.closed_sum_float(beta)
            value = 1 / (mp.pi * s) + self._K * (mpf(u_sum) - mpf(reference))
            if value <= 0:
                raise DomainError(
                    f"non-positive radicand {float(value):.3e} for u_sum={float(u_sum):.6e} at beta={float(beta):.6e}"
                )
            return float(value)

    def closed_sum_float(self, beta: float) -> float:
        """ΔX_T + ΔP_T in double precision, operation for operation as the closed-form report."""
        s = self.cfg.alpha() * beta
        var_x = closed_variance_x(self.cfg.half_width_L, self.phi, s)
        var_p = closed_variance_p(self.cfg, closed_form_mean_level(s))
        if var_x <= 0:
            raise DomainError(f"closed-form position variance {var_x:.3e} at beta={beta:.6e}")
        return math.sqrt(var_x) + math.sqrt(var_p)

    def zeta(self, beta: float) -> float:
        with _map_precision():
            return float(self._zeta(beta))

    def _zeta(self, beta):
        _, _, _, dp_db, _, c_t_db = self._pieces(beta)
        return -mp.pi / 2 * self._K * (dp_db + c_t_db)

    def eta_corr(self, beta: float) -> float:
        with _map_precision():
            return float(self._eta_corr(beta))

    def _eta_corr(self, beta):
        _, _, dx_db, _, _, _ = self._pieces(beta)
        return -mp.pi / 2 * self._K * dx_db

    def tau(self, beta: float) -> float:
        with _map_precision():
            return float(self._kB * self._zeta(beta))

    def chi(self, beta: float) -> float:
        with _map_precision():
            return float(self._kB * self._eta_corr(beta))

    def log_z(self, beta: float) -> float:
        """ln Z from the mapped form, rest energy factored out."""
        with _map_precision():
            return float(mp.log(mp.pi / 2) + mp.log(self._radicand(beta)) / 2)

    def internal_energy(self, beta: float) -> float:
        with _map_precision():
            R = self._radicand(beta)
            return float(self._mc2 + (self._zeta(beta) + self._eta_corr(beta)) / (mp.pi * R))

    def thermal_energy(self, beta: float) -> float:
        """U - mc², kept separate so the excess survives rounding next to mc²."""
        with _map_precision():
            R = self._radicand(beta)
            return float((self._zeta(beta) + self._eta_corr(beta)) / (mp.pi * R))

    def _free_log(self, beta):
        dx, dp, _, _, c_t, _ = self._pieces(beta)
        return mp.log(self._K_free * (dx + dp + c_t)) / 2

    def helmholtz(self, beta: float) -> float:
        with _map_precision():
            self._radicand(beta)
            return float(self._mc2 - self._free_log(beta) / mpf(beta))

    def thermal_helmholtz(self, beta: float) -> float:
        """F - mc²."""
        with _map_precision():
            self._radicand(beta)
            return float(-self._free_log(beta) / mpf(beta))

    def entropy(self, beta: float) -> float:
        with _map_precision():
            R = self._radicand(beta)
            tau_chi = self._kB * (self._zeta(beta) + self._eta_corr(beta))
            return float(self._kB * self._free_log(beta) + mpf(beta) * tau_chi / (mp.pi * R))

    def entropy_literal(self, beta: float) -> float:
        """Same two terms with the correction divided by β instead of multiplied."""
        with _map_precision():
            R = self._radicand(beta)
            tau_chi = self._kB * (self._zeta(beta) + self._eta_corr(beta))
            return float(self._kB * self._free_log(beta) + tau_chi / (mp.pi * mpf(beta) * R))

    # -- temperature-parametrised views -------------------------------------

    def _beta(self, temperature: float) -> float:
        return beta_of(self.cfg, temperature)

    def helmholtz_T(self, temperature: float) -> float:
        return self.helmholtz(self._beta(temperature))

    def entropy_T(self, temperature: float) -> float:
        return self.entropy(self._beta(temperature))

    def internal_energy_T(self, temperature: float) -> float:
        return self.internal_energy(self._beta(temperature))


def c_t(cfg: EngineConfig, temperature: float) -> float:
    """Compensator n̄²/K - (ΔX_T + ΔP_T) that makes the mapped Z equal the closed-form Z."""
    umap = UncertaintyMap.at(cfg, temperature)
    return umap.c_t(beta_of(cfg, temperature))


def partition_from_uncertainty(cfg: EngineConfig, temperature: float, dx: float, dp: float) -> float:
    """Z = (π/2)[K(ΔX_T + ΔP_T + C_T)]^{1/2}, returned with e^{-βmc²} factored out."""
    umap = UncertaintyMap.at(cfg, temperature)
    radicand = umap.radicand(beta_of(cfg, temperature), u_sum=dx + dp)
    if not radicand > 0:
        raise DomainError(f"non-positive radicand {radicand:.3e} for dx={dx!r}, dp={dp!r}")
    return 0.5 * math.pi * math.sqrt(radicand)


def internal_energy_from_uncertainty(cfg: EngineConfig, temperature: float, *, energy_shift: float = 0.0) -> float:
    umap = UncertaintyMap.at(cfg, temperature)
    return umap.internal_energy(beta_of(cfg, temperature)) + energy_shift


def helmholtz_from_uncertainty(cfg: EngineConfig, temperature: float) -> float:
    return UncertaintyMap.at(cfg, temperature).helmholtz(beta_of(cfg, temperature))


def entropy_from_uncertainty(cfg: EngineConfig, temperature: float) -> float:
    return UncertaintyMap.at(cfg, temperature).entropy(beta_of(cfg, temperature))


def entropy_literal(cfg: EngineConfig, temperature: float) -> float:
    return UncertaintyMap.at(cfg, temperature).entropy_literal(beta_of(cfg, temperature))


def mapped_state(cfg: EngineConfig, temperature: float) -> UncertaintyMappedState:
    umap = UncertaintyMap.at(cfg, temperature)
    beta = beta_of(cfg, temperature)
    radicand = umap.radicand(beta)
    return UncertaintyMappedState(
        temperature=float(temperature),
        u_sum=umap.u_sum(beta),
        c_t=umap.c_t(beta),
        z_mapped=0.5 * math.pi * math.sqrt(radicand),
        u_mapped=umap.internal_energy(beta),
        f_mapped=umap.helmholtz(beta),
        s_mapped=umap.entropy(beta),
    )


# -- verbatim transcriptions, reported next to the consistent forms ----------


def _literal_inputs(cfg: EngineConfig, temperature: float):
    point = thermal_point(cfg, temperature)
    phi = closed_form_phi(cfg, closed_form_mean_level(point.alpha_beta))
    room = 4.0 / 3.0 - phi * phi
    if room <= 0:
        raise DomainError(f"phi+² = {phi * phi:.6f} must stay below 4/3")
    return point, phi, room


def c_t_literal(cfg: EngineConfig, temperature: float) -> float:
    point, phi, room = _literal_inputs(cfg, temperature)
    s = point.alpha_beta
    L = cfg.half_width_L
    inner = 2.0 * (s - math.sqrt(math.pi) * s**1.5 - 1.0) / (math.pi**2.5 * math.sqrt(s) * room) - 1.0
    return L * phi * math.sqrt(room) * inner - math.sqrt(2.0 * cfg.mass * cfg.constants.c)


def zeta_literal(cfg: EngineConfig, temperature: float) -> float:
    point, phi, room = _literal_inputs(cfg, temperature)
    s, beta, alpha = point.alpha_beta, point.beta, cfg.alpha()
    L = cfg.half_width_L
    K = UncertaintyMap(cfg, phi).prefactor
    first = 2.0 * L * phi / (math.pi**2.5 * math.sqrt(s * room)) * (alpha - alpha**1.5 * math.sqrt(math.pi * beta))
    second = L * phi / (math.pi**2.5 * beta**1.5 * math.sqrt(alpha * room)) * (s - math.sqrt(math.pi) * s**1.5 - 1.0)
    return K * (first - second)


def eta_corr_literal(cfg: EngineConfig, temperature: float) -> float:
    point, phi, _ = _literal_inputs(cfg, temperature)
    s, beta, alpha = point.alpha_beta, point.beta, cfg.alpha()
    L = cfg.half_width_L
    tail = math.exp(-s) - math.sqrt(math.pi * s)
    bracket = math.sqrt(alpha / (4.0 * beta)) * tail + math.sqrt(s) * (
        -alpha * math.exp(-s) - math.sqrt(math.pi * alpha / (4.0 * beta))
    )
    variance = closed_variance_x(L, phi, s)
    if variance <= 0:
        raise DomainError(f"position variance {variance:.3e} leaves the square-root domain")
    return (4.0 * L * L * phi * phi / math.pi**2.5) * bracket / (2.0 * math.sqrt(variance))


def tau_literal(cfg: EngineConfig, temperature: float) -> float:
    return cfg.constants.k_B * zeta_literal(cfg, temperature)


def chi_literal(cfg: EngineConfig, temperature: float) -> float:
    return cfg.constants.k_B * eta_corr_literal(cfg, temperature)


def closed_form_sum(cfg: EngineConfig, temperature: float) -> float:
    """ΔX_T + ΔP_T of the closed-form report, the float reference the mapping is anchored to."""
    report = uncertainty_report(cfg, temperature, Method.PAPER_CLOSED_FORM)
    return report.dx + report.dp


def prefactor_ratio() -> float:
    """[4c√(2mc)/(πħ²)] / [(π/2)²·16c√(2mc)/(π³ħ²)], identically 1."""
    with _map_precision():
        return float((4 / mp.pi) / ((mp.pi / 2) ** 2 * 16 / mp.pi**3))


__all__ = [
    "MAP_DPS",
    "UncertaintyMap",
    "UncertaintyMappedState",
    "c_t",
    "c_t_literal",
    "chi_literal",
    "closed_form_sum",
    "entropy_from_uncertainty",
    "entropy_literal",
    "eta_corr_literal",
    "helmholtz_from_uncertainty",
    "internal_energy_from_uncertainty",
    "mapped_state",
    "partition_from_uncertainty",
    "prefactor_ratio",
    "tau_literal",
    "zeta_literal",
]
