import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.constants import ANGSTROM, ELECTRON_MASS_KG, make_engine_config
from src.core.exceptions import DegenerateDenominator, TemperatureOrder
from src.cycle.efficiency_bounds import (
    NEGATIVE_VARIANCE,
    OUTSIDE_WINDOW,
    VALID,
    bound_ratios,
    efficiency_bound_point,
    efficiency_bounds,
)
from src.cycle.stirling import (
    cycle_work,
    efficiency_from_mean_levels,
    efficiency_from_uncertainty,
    efficiency_from_weights,
    isothermal_entropy_changes,
    log_ratios,
    run_cycle,
    work_from_uncertainty,
    work_prefactor,
    work_prefactor_literal,
)
from src.ensemble.partition import Method

K_B = 1.380649e-23


def test_golden_point_is_a_two_level_engine(electron_cfg):
    report = run_cycle(electron_cfg, 150.0, 100.0)
    assert report.W > 0
    assert report.W == pytest.approx(K_B * 50.0 * math.log(2.0), rel=1e-9)
    assert report.Q_AB == pytest.approx(K_B * 150.0 * math.log(2.0), rel=1e-9)
    assert report.efficiency <= report.carnot * (1.0 + 1e-12)
    assert report.efficiency == pytest.approx(report.carnot, rel=1e-9)


def test_cycle_bookkeeping(electron_cfg):
    report = run_cycle(electron_cfg, 300.0, 100.0)
    assert report.W == report.Q_AB + report.Q_BC + report.Q_CD + report.Q_DA
    assert report.heat_in == report.Q_DA + report.Q_AB
    assert report.efficiency_from_heats == pytest.approx(report.efficiency, rel=1e-12)
    assert report.carnot == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert report.Z_B == pytest.approx(math.exp(report.log_Z_B), rel=1e-15)
    payload = report.to_dict()
    assert payload["method"] == "oracle"
    assert payload["energy_shift"] == 0.0


def test_equal_temperatures_produce_no_work(electron_cfg):
    assert run_cycle(electron_cfg, 250.0, 250.0).W == 0.0
    assert cycle_work(electron_cfg, 250.0, 250.0) == 0.0


def test_energy_shift_leaves_heats_untouched(electron_cfg):
    base = run_cycle(electron_cfg, 300.0, 100.0)
    shift = electron_cfg.rest_energy
    moved = run_cycle(electron_cfg, 300.0, 100.0, energy_shift=shift)
    for name in ("Q_AB", "Q_BC", "Q_CD", "Q_DA", "W", "efficiency"):
        assert getattr(moved, name) == getattr(base, name)
    assert moved.U_A - base.U_A == pytest.approx(shift, rel=1e-12)


def test_cold_bath_above_hot_bath_is_rejected(electron_cfg):
    with pytest.raises(TemperatureOrder):
        run_cycle(electron_cfg, 100.0, 300.0)
    with pytest.raises(TemperatureOrder):
        work_from_uncertainty(electron_cfg, 100.0, 300.0)
    with pytest.raises(TemperatureOrder):
        efficiency_from_uncertainty(electron_cfg, 100.0, 300.0)
    with pytest.raises(TemperatureOrder):
        efficiency_bounds(electron_cfg, 100.0, 300.0, [0.5 * ANGSTROM])


def test_cycle_work_accepts_reversed_baths(electron_cfg):
    forward = cycle_work(electron_cfg, 300.0, 100.0)
    backward = cycle_work(electron_cfg, 100.0, 300.0)
    assert backward == pytest.approx(-forward, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=5.0, max_value=500.0, allow_nan=False),
    st.floats(min_value=50.0, max_value=1000.0, allow_nan=False),
    st.floats(min_value=50.0, max_value=1000.0, allow_nan=False),
)
def test_cycle_work_is_antisymmetric_in_the_baths(width_angstrom, T1, T2):
    cfg = make_engine_config(ELECTRON_MASS_KG, width_angstrom * ANGSTROM)
    forward = cycle_work(cfg, T1, T2)
    backward = cycle_work(cfg, T2, T1)
    assert backward == pytest.approx(-forward, rel=1e-9, abs=1e-12 * K_B * max(T1, T2))


def test_closed_form_partition_idles_the_cycle(electron_cfg):
    report = run_cycle(electron_cfg, 300.0, 100.0, Method.PAPER_CLOSED_FORM)
    assert report.Q_AB == 0.0
    assert report.W == pytest.approx(0.0, abs=1e-30)
    assert report.efficiency == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("L_angstrom", [0.1, 0.5, 1.0])
def test_oracle_efficiency_stays_below_carnot(L_angstrom):
    cfg = make_engine_config(ELECTRON_MASS_KG, L_angstrom * ANGSTROM)
    report = run_cycle(cfg, 600.0, 200.0)
    assert 0.0 < report.efficiency <= report.carnot * (1.0 + 1e-12)


def test_corrected_integral_cycle_matches_oracle(cfg_at_group):
    cfg = cfg_at_group(0.2, temperature=300.0)
    oracle = run_cycle(cfg, 300.0, 100.0)
    corrected = run_cycle(cfg, 300.0, 100.0, Method.CORRECTED_INTEGRAL)
    assert corrected.W == pytest.approx(oracle.W, rel=1e-8)


# -- uncertainty-driven forms -------------------------------------------------


def test_work_prefactors(electron_cfg):
    assert work_prefactor(electron_cfg) == pytest.approx(math.pi * electron_cfg.alpha(), rel=1e-15)
    assert work_prefactor_literal(electron_cfg) * ELECTRON_MASS_KG == pytest.approx(1.0, rel=1e-12)


def test_work_from_uncertainty_reproduces_isothermal_work(electron_cfg):
    expected = run_cycle(electron_cfg, 150.0, 100.0).W
    assert work_from_uncertainty(electron_cfg, 150.0, 100.0) == pytest.approx(expected, rel=1e-8)


def test_log_ratios_deep_quantum(electron_cfg):
    ln_ba, ln_dc = log_ratios(electron_cfg, 150.0, 100.0, Method.PAPER_CLOSED_FORM)
    assert ln_ba == 0.0 and ln_dc == 0.0


def test_efficiency_from_weights():
    assert efficiency_from_weights(1.0, 1.0, math.log(2.0), -math.log(2.0)) == 0.0
    assert efficiency_from_weights(3.0, 1.0, math.log(2.0), -math.log(2.0)) == pytest.approx(
        2.0 * math.log(2.0) / (-0.5 + 3.0 * (math.log(2.0) + 0.5)), rel=1e-15
    )
    with pytest.raises(DegenerateDenominator):
        efficiency_from_weights(0.0, 0.0, 1.0, 1.0)
    assert efficiency_from_weights(3.0, 1.0, math.log(2.0), -math.log(2.0), isochoric_scale=0.5) == pytest.approx(
        2.0 * math.log(2.0) / (3.0 * math.log(2.0) + 0.5), rel=1e-15
    )


def test_isothermal_entropy_changes_in_deep_quantum_regime(electron_cfg):
    q_hot, q_cold = isothermal_entropy_changes(electron_cfg, 300.0, 100.0)
    assert q_hot == pytest.approx(math.log(2.0), rel=1e-9)
    assert q_cold == pytest.approx(-math.log(2.0), rel=1e-9)


def test_uncertainty_efficiencies_are_finite(electron_cfg):
    assert math.isfinite(efficiency_from_uncertainty(electron_cfg, 300.0, 100.0))
    assert math.isfinite(efficiency_from_mean_levels(electron_cfg, 300.0, 100.0))


def test_efficiency_bound_sweep(electron_cfg):
    widths = [w * ANGSTROM for w in (0.2, 0.5, 0.8, 10.0)]
    bounds = efficiency_bounds(electron_cfg, 300.0, 100.0, widths, basis_size=32)
    assert len(bounds.points) == 4
    assert [p.half_width_L for p in bounds.points] == widths
    for point in bounds.points:
        assert point.flag == VALID
        assert 0.0 <= point.eta_lower <= point.eta_upper <= point.carnot
        assert point.u_T1 > 0 and point.u_T2 > 0
    assert bounds.to_dict()["sweep_variable"] == "u_T1"


def test_efficiency_bracket_in_deep_quantum_regime(electron_cfg):
    point = efficiency_bound_point(electron_cfg, 300.0, 100.0)
    ratios = [bound_ratios(electron_cfg, T) for T in (300.0, 100.0)]
    low = min(r.lower for r in ratios)
    high = max(r.upper for r in ratios)
    ln2 = math.log(2.0)
    assert point.eta_upper == pytest.approx(200.0 * ln2 / (300.0 * ln2 + 100.0 * low), rel=1e-9)
    assert point.eta_lower == pytest.approx(200.0 * ln2 / (300.0 * ln2 + 100.0 * high), rel=1e-9)
    assert point.carnot == pytest.approx(2.0 / 3.0, rel=1e-15)


def test_bound_ratios_bracket_one(electron_cfg):
    ratios = bound_ratios(electron_cfg, 300.0)
    assert 0.0 < ratios.lower <= 1.0 <= ratios.upper
    assert ratios.lower == pytest.approx(0.5, rel=1e-4)


def test_efficiency_bracket_closes_toward_high_uncertainty(cfg_at_group):
    groups = [3.0, 2.0, 1.5, 1.0, 0.75]
    points = [efficiency_bound_point(cfg_at_group(ab, temperature=300.0), 300.0, 100.0) for ab in groups]
    assert all(p.flag == VALID for p in points)
    assert all(0.0 <= p.eta_lower <= p.eta_upper <= p.carnot for p in points)
    u = [p.u_T1 for p in points]
    upper = [p.eta_upper for p in points]
    gap = [p.eta_upper - p.eta_lower for p in points]
    assert all(a < b for a, b in zip(u, u[1:]))
    assert all(a > b for a, b in zip(upper, upper[1:]))
    assert all(a > b for a, b in zip(gap, gap[1:]))


def test_efficiency_bracket_flags_work_consuming_points(cfg_at_group):
    point = efficiency_bound_point(cfg_at_group(0.2, temperature=300.0), 300.0, 100.0)
    assert point.flag == OUTSIDE_WINDOW
    assert point.eta_upper < 0.0


def test_efficiency_bound_point_flags_negative_variance():
    relativistic = make_engine_config(ELECTRON_MASS_KG, 1e-13)
    point = efficiency_bound_point(relativistic, 1e13, 5e12, basis_size=8)
    assert point.flag == NEGATIVE_VARIANCE
    assert math.isnan(point.eta_lower) and math.isnan(point.eta_upper)


def test_semiclassical_cycle_consumes_work(cfg_at_group):
    # leading order: W = √(αk_B/π)(√T2 - √T1)
    cfg = cfg_at_group(1e-3, temperature=300.0)
    report = run_cycle(cfg, 300.0, 100.0)
    expected = math.sqrt(cfg.alpha() * K_B / math.pi) * (math.sqrt(100.0) - math.sqrt(300.0))
    assert report.W < 0
    assert report.W == pytest.approx(expected, rel=0.2)
