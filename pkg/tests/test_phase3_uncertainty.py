import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.constants import ANGSTROM, ELECTRON_MASS_KG, make_engine_config
from src.core.exceptions import BadParameter, NegativeVariance
from src.ensemble.partition import Method
from src.uncertainty.thermal import (
    ValidityFlag,
    closed_form_mean_level,
    closed_form_phi,
    closed_variance_x,
    closed_variance_x_erfc,
    normalized_sum,
    sum_uncertainty_fixed_n,
    thermal_scales,
    thermal_variance_p,
    thermal_variance_x,
    uncertainty_report,
)

HBAR = 1.054571817e-34


@pytest.fixture
def relativistic_cfg():
    return make_engine_config(ELECTRON_MASS_KG, 1e-13)


@settings(max_examples=40, deadline=None)
@given(
    L_angstrom=st.floats(min_value=0.05, max_value=1.0),
    T=st.floats(min_value=10.0, max_value=1000.0),
    method=st.sampled_from([Method.ORACLE_SERIES, Method.PAPER_CLOSED_FORM]),
)
def test_thermal_product_respects_quantum_bound(L_angstrom, T, method):
    cfg = make_engine_config(ELECTRON_MASS_KG, L_angstrom * ANGSTROM)
    report = uncertainty_report(cfg, T, method)
    assert report.valid
    assert report.product >= HBAR / 2.0


def test_report_fields_are_consistent(electron_cfg):
    report = uncertainty_report(electron_cfg, 150.0)
    assert report.dx == pytest.approx(math.sqrt(report.variance_x), rel=1e-15)
    assert report.dp == pytest.approx(math.sqrt(report.variance_p), rel=1e-15)
    assert report.sum_normalized == normalized_sum(electron_cfg, 150.0, report.dx, report.dp)
    assert report.product == report.dx * report.dp
    payload = report.to_dict()
    assert payload["method"] == "oracle"
    assert payload["validity_flag"] == "valid"


@pytest.mark.parametrize("T", [100.0, 300.0])
def test_thermal_scales_multiply_to_hbar(electron_cfg, T):
    length, momentum = thermal_scales(electron_cfg, T)
    assert length * momentum == pytest.approx(HBAR, rel=1e-12)
    assert length == pytest.approx(HBAR / math.sqrt(ELECTRON_MASS_KG * 1.380649e-23 * T), rel=1e-12)
    assert normalized_sum(electron_cfg, T, length, momentum) == pytest.approx(2.0, rel=1e-12)


def test_deep_quantum_oracle_is_ground_state(electron_cfg):
    # αβ ≈ 4000 at 100 K: only n = 1 is populated
    report = uncertainty_report(electron_cfg, 100.0)
    L = electron_cfg.half_width_L
    assert report.n_mean == pytest.approx(1.0, rel=1e-12)
    assert report.variance_x == pytest.approx(4.0 * L * L * (1.0 / 12.0 - 1.0 / (2.0 * math.pi**2)), rel=1e-7)


@pytest.mark.parametrize("alpha_beta", [1e-6, 1e-4])
def test_closed_form_tracks_oracle_at_high_temperature(cfg_at_group, alpha_beta):
    cfg = cfg_at_group(alpha_beta)
    oracle = uncertainty_report(cfg, 100.0)
    paper = uncertainty_report(cfg, 100.0, Method.PAPER_CLOSED_FORM)
    assert paper.sum_normalized == pytest.approx(oracle.sum_normalized, rel=0.05)
    assert paper.variance_p == pytest.approx(oracle.variance_p, rel=0.05)
    assert thermal_variance_x(cfg, 100.0, Method.PAPER_CLOSED_FORM) == paper.variance_x
    assert thermal_variance_p(cfg, 100.0) == oracle.variance_p


def test_closed_form_momentum_variance_is_equipartition_plus_rest(cfg_at_group):
    cfg = cfg_at_group(1e-3)
    kT = cfg.constants.k_B * 100.0
    variance = thermal_variance_p(cfg, 100.0, Method.PAPER_CLOSED_FORM)
    assert variance - cfg.rest_momentum_term == pytest.approx(cfg.mass * kT, rel=1e-6)


def test_fixed_mean_level_reproduces_report(cfg_at_group):
    cfg = cfg_at_group(1e-3)
    n_bar = closed_form_mean_level(1e-3)
    report = uncertainty_report(cfg, 100.0, Method.PAPER_CLOSED_FORM)
    assert sum_uncertainty_fixed_n(cfg, n_bar, 100.0) == pytest.approx(report.sum_normalized, rel=1e-12)


def test_fixed_mean_level_grows_with_n(electron_cfg):
    low = sum_uncertainty_fixed_n(electron_cfg, 1.0, 300.0)
    high = sum_uncertainty_fixed_n(electron_cfg, 2.0, 300.0)
    assert high > low


def test_fixed_mean_level_rejects_sub_ground(electron_cfg):
    with pytest.raises(BadParameter):
        sum_uncertainty_fixed_n(electron_cfg, 0.5, 300.0)
    with pytest.raises(BadParameter):
        sum_uncertainty_fixed_n(electron_cfg, math.nan, 300.0)


def test_negative_variance_regime_is_flagged(relativistic_cfg):
    hot = 1e13
    report = uncertainty_report(relativistic_cfg, hot, Method.PAPER_CLOSED_FORM)
    assert report.validity_flag is ValidityFlag.NEGATIVE_VARIANCE
    assert not report.valid
    assert math.isnan(report.dx) and math.isnan(report.sum_normalized)
    assert report.variance_x < 0
    with pytest.raises(NegativeVariance):
        thermal_variance_x(relativistic_cfg, hot, Method.PAPER_CLOSED_FORM)
    with pytest.raises(NegativeVariance):
        sum_uncertainty_fixed_n(relativistic_cfg, 1.0, hot)


def test_corrected_method_has_no_variance_form(electron_cfg):
    with pytest.raises(BadParameter):
        thermal_variance_x(electron_cfg, 100.0, Method.CORRECTED_INTEGRAL)
    with pytest.raises(BadParameter):
        uncertainty_report(electron_cfg, 100.0, Method.CORRECTED_INTEGRAL)


def test_erfc_form_differs_only_at_next_order():
    L, phi, s = 1e-9, 1.0, 1e-4
    closed = closed_variance_x(L, phi, s)
    with_erfc = closed_variance_x_erfc(L, phi, s)
    assert with_erfc < closed
    assert with_erfc == pytest.approx(closed, rel=1e-5)


def test_closed_form_phi_uses_rounded_mean_level(electron_cfg):
    assert closed_form_phi(electron_cfg, 0.01) == closed_form_phi(electron_cfg, 1.4)
    assert closed_form_phi(electron_cfg, 2.6) > closed_form_phi(electron_cfg, 1.0)
