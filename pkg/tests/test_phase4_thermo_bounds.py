import math

import pytest

from src.core.constants import ELECTRON_MASS_KG, beta_of, make_engine_config
from src.core.exceptions import BadBasisSize, DegenerateDenominator, DomainError, LevelOutOfRange
from src.ensemble.partition import Method, partition
from src.numerics.derivatives import central_diff
from src.spectrum.levels import level
from src.uncertainty.bounds import (
    closed_variance_sum,
    dunkl_williams,
    dunkl_williams_check,
    reverse_bound_thermal,
    state_bounds,
    state_variance_sum,
    sum_variance_lower_bound,
    thermal_bounds,
    thermal_dunkl_williams,
    thermal_lower_bound,
    thermal_moment_sum,
    thermal_variance_sum,
)
from src.uncertainty.thermal import uncertainty_report
from src.uncertainty.thermo_map import (
    UncertaintyMap,
    c_t,
    c_t_literal,
    entropy_literal,
    mapped_state,
    partition_from_uncertainty,
    prefactor_ratio,
)

GROUPS = [1e-6, 1e-4, 1e-3]


# -- mapped thermodynamics ---------------------------------------------------


@pytest.mark.parametrize("alpha_beta", GROUPS)
def test_mapped_radicand_is_squared_mean_level(cfg_at_group, alpha_beta):
    cfg = cfg_at_group(alpha_beta)
    umap = UncertaintyMap.at(cfg, 100.0)
    beta = beta_of(cfg, 100.0)
    s = cfg.alpha() * beta
    assert umap.radicand(beta) == pytest.approx(1.0 / (math.pi * s), rel=1e-12)
    assert umap.c_t(beta) == pytest.approx(c_t(cfg, 100.0), rel=1e-12)


@pytest.mark.parametrize("alpha_beta", GROUPS)
def test_mapped_potentials_match_closed_form(cfg_at_group, alpha_beta):
    cfg = cfg_at_group(alpha_beta)
    umap = UncertaintyMap.at(cfg, 100.0)
    beta = beta_of(cfg, 100.0)
    k_B = cfg.constants.k_B
    log_z = partition(cfg, 100.0, method=Method.PAPER_CLOSED_FORM).log_z
    assert umap.log_z(beta) == pytest.approx(log_z, rel=1e-12)
    assert umap.thermal_energy(beta) == pytest.approx(0.5 / beta, rel=1e-12)
    assert umap.thermal_helmholtz(beta) == pytest.approx(-log_z / beta, rel=1e-12)
    assert umap.entropy(beta) == pytest.approx(k_B * (log_z + 0.5), rel=1e-12)


@pytest.mark.parametrize("alpha_beta", GROUPS)
def test_mapped_thermodynamic_identities(cfg_at_group, alpha_beta):
    cfg = cfg_at_group(alpha_beta)
    umap = UncertaintyMap.at(cfg, 100.0)
    beta = beta_of(cfg, 100.0)
    U = umap.thermal_energy(beta)
    F = umap.thermal_helmholtz(beta)
    TS = 100.0 * umap.entropy(beta)
    assert U == pytest.approx(F + TS, rel=1e-6)
    dF_dT = central_diff(lambda t: umap.thermal_helmholtz(beta_of(cfg, t)), 100.0)
    assert -dF_dT == pytest.approx(umap.entropy(beta), rel=1e-6)
    dlnZ_db = central_diff(umap.log_z, beta)
    assert -dlnZ_db == pytest.approx(U, rel=1e-6)


@pytest.mark.parametrize("alpha_beta", GROUPS)
def test_partition_round_trip_through_report(cfg_at_group, alpha_beta):
    cfg = cfg_at_group(alpha_beta)
    report = uncertainty_report(cfg, 100.0, Method.PAPER_CLOSED_FORM)
    expected = math.exp(partition(cfg, 100.0, method=Method.PAPER_CLOSED_FORM).log_z)
    assert partition_from_uncertainty(cfg, 100.0, report.dx, report.dp) == pytest.approx(expected, rel=1e-12)


def test_partition_from_uncertainty_rejects_empty_radicand(cfg_at_group):
    cfg = cfg_at_group(1e-4)
    with pytest.raises(DomainError):
        partition_from_uncertainty(cfg, 100.0, 0.0, 0.0)


def test_substituted_radicand_must_stay_positive(cfg_at_group):
    cfg = cfg_at_group(1e-4)
    umap = UncertaintyMap.at(cfg, 100.0)
    beta = beta_of(cfg, 100.0)
    s = cfg.alpha() * beta
    closed = umap.closed_sum_float(beta)
    assert umap.radicand(beta, u_sum=closed) == pytest.approx(1.0 / (math.pi * s), rel=1e-12)
    with pytest.raises(DomainError):
        umap.radicand(beta, u_sum=0.0)
    with pytest.raises(DomainError):
        umap.radicand(beta, u_sum=0.5 * closed)


def test_mapped_state_snapshot(cfg_at_group):
    cfg = cfg_at_group(1e-4)
    state = mapped_state(cfg, 100.0)
    beta = beta_of(cfg, 100.0)
    assert state.z_mapped == pytest.approx(math.exp(partition(cfg, 100.0, method=Method.PAPER_CLOSED_FORM).log_z), rel=1e-12)
    assert state.u_mapped - cfg.rest_energy == pytest.approx(0.5 / beta, rel=1e-6)
    assert state.f_mapped < state.u_mapped
    assert set(state.to_dict()) >= {"u_sum", "c_t", "z_mapped", "u_mapped", "f_mapped", "s_mapped"}


def test_prefactors_agree():
    assert prefactor_ratio() == pytest.approx(1.0, rel=1e-15)


def test_map_rejects_large_fv_weight(electron_cfg):
    with pytest.raises(DomainError):
        UncertaintyMap(electron_cfg, 1.2)


def test_literal_forms_are_reported_alongside(electron_cfg):
    assert math.isfinite(c_t_literal(electron_cfg, 100.0))
    assert math.isfinite(entropy_literal(electron_cfg, 100.0))
    relativistic = make_engine_config(ELECTRON_MASS_KG, 1e-13)
    with pytest.raises(DomainError):
        c_t_literal(relativistic, 1e13)


# -- variance bounds ---------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 7, 20, 50])
def test_state_bounds_bracket_variance_sum(electron_cfg, n):
    bounds = state_bounds(electron_cfg, n, basis_size=50)
    middle = state_variance_sum(electron_cfg, n)
    assert bounds.lower <= middle <= bounds.upper
    assert bounds.upper - middle == pytest.approx(level(n, electron_cfg).x_mean ** 2, rel=1e-9)


def test_lower_bound_is_translation_invariant(electron_cfg):
    base = sum_variance_lower_bound(electron_cfg, 3, 40)
    shifted = sum_variance_lower_bound(electron_cfg, 3, 40, shift=7.5e-10)
    assert shifted == base


def test_lower_bound_argument_errors(electron_cfg):
    with pytest.raises(LevelOutOfRange):
        sum_variance_lower_bound(electron_cfg, 0, 10)
    with pytest.raises(BadBasisSize):
        sum_variance_lower_bound(electron_cfg, 6, 5)
    with pytest.raises(BadBasisSize):
        thermal_lower_bound(electron_cfg, 100.0, 0)


@pytest.mark.parametrize("temperature", [100.0, 300.0, 1000.0])
def test_thermal_bounds_bracket_variance_sum(electron_cfg, temperature):
    bounds = thermal_bounds(electron_cfg, temperature, basis_size=64)
    middle = thermal_variance_sum(electron_cfg, temperature)
    assert bounds.lower <= middle <= bounds.upper


@pytest.mark.parametrize("temperature", [100.0, 300.0, 1000.0])
def test_thermal_moment_sum_sits_above_variance_sum(electron_cfg, temperature):
    assert thermal_variance_sum(electron_cfg, temperature) < thermal_moment_sum(electron_cfg, temperature)


def test_thermal_moment_ratio_in_ground_state(electron_cfg):
    # ⟨x²⟩/Var(x) of n = 1 on [0, 2L]
    expected = (4.0 / 3.0 - 2.0 / math.pi**2) / (1.0 / 3.0 - 2.0 / math.pi**2)
    ratio = thermal_moment_sum(electron_cfg, 100.0) / thermal_variance_sum(electron_cfg, 100.0)
    assert ratio == pytest.approx(expected, rel=1e-5)


def test_reverse_bound_is_twice_closed_sum(electron_cfg):
    assert reverse_bound_thermal(electron_cfg, 300.0) == pytest.approx(
        2.0 * closed_variance_sum(electron_cfg, 300.0), rel=1e-12
    )


@pytest.mark.parametrize("n", [1, 4, 30])
def test_dunkl_williams_per_state(electron_cfg, n):
    record = dunkl_williams_check(electron_cfg, n)
    data = level(n, electron_cfg)
    assert record.holds
    assert record.covariance == 0.0
    spread = (math.sqrt(data.x_variance) - math.sqrt(data.p_variance)) ** 2
    assert record.slack == pytest.approx(spread, rel=1e-9)


def test_dunkl_williams_slack_is_square_of_spread():
    record = dunkl_williams(9.0, 4.0, 0.0, "toy")
    assert record.lhs == 13.0
    assert record.slack == pytest.approx((3.0 - 2.0) ** 2, rel=1e-14)
    assert record.to_dict()["subject"] == "toy"


def test_thermal_dunkl_williams_holds(electron_cfg):
    assert thermal_dunkl_williams(electron_cfg, 300.0).holds


def test_dunkl_williams_degenerate():
    with pytest.raises(DegenerateDenominator):
        dunkl_williams(1.0, 1.0, 1.0, "collinear")
