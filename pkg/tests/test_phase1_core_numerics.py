import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.constants import (
    ANGSTROM,
    ELECTRON_MASS_KG,
    SpectrumMode,
    beta_of,
    dimensionless_group,
    half_width_for_group,
    make_engine_config,
)
from src.core.exceptions import (
    BadParameter,
    BadTolerance,
    EvaluationFailure,
    NonPositiveParameter,
    SeriesNotConverged,
)
from src.core.settings import load_settings
from src.numerics.derivatives import central_diff
from src.numerics.reference import erfc_maclaurin, erfc_reference, gauss_sum_reference
from src.numerics.series import gauss_sum, sum_blocks
from src.numerics.special import erfc, erfcx


# -- configuration -----------------------------------------------------------


@pytest.mark.parametrize(
    "mass,L",
    [(0.0, 1e-10), (-1.0, 1e-10), (ELECTRON_MASS_KG, 0.0), (ELECTRON_MASS_KG, math.nan), (ELECTRON_MASS_KG, math.inf)],
)
def test_make_engine_config_rejects_non_positive(mass, L):
    with pytest.raises(NonPositiveParameter):
        make_engine_config(mass, L)


@pytest.mark.parametrize(
    "overrides",
    [
        {"series_rel_tol": 1e-3},
        {"series_rel_tol": 0.0},
        {"series_max_terms": 100},
        {"series_max_terms": 20_000.5},
        {"fd_step_scale": -1.0},
        {"not_a_tolerance": 1.0},
    ],
)
def test_make_engine_config_rejects_bad_tolerances(overrides):
    with pytest.raises(BadTolerance):
        make_engine_config(ELECTRON_MASS_KG, 0.5 * ANGSTROM, overrides)


def test_make_engine_config_ignores_none_overrides(electron_cfg):
    cfg = make_engine_config(ELECTRON_MASS_KG, 0.5 * ANGSTROM, {"series_rel_tol": None, "series_max_terms": None})
    assert cfg == electron_cfg
    assert cfg.spectrum is SpectrumMode.EXPANDED


def test_alpha_is_ground_excitation_of_the_box(electron_cfg):
    hbar = electron_cfg.constants.hbar
    p1 = math.pi * hbar / (2.0 * electron_cfg.half_width_L)
    assert electron_cfg.alpha() == pytest.approx(p1 * p1 / (2.0 * ELECTRON_MASS_KG), rel=1e-14)
    assert electron_cfg.alpha() == pytest.approx(6.0246e-18, rel=1e-3)


@pytest.mark.parametrize("alpha_beta", [1e-8, 1e-3, 1.0, 250.0])
def test_half_width_for_group_inverts_dimensionless_group(alpha_beta):
    L = half_width_for_group(ELECTRON_MASS_KG, 150.0, alpha_beta)
    cfg = make_engine_config(ELECTRON_MASS_KG, L)
    assert dimensionless_group(cfg, 150.0) == pytest.approx(alpha_beta, rel=1e-12)


def test_beta_rejects_zero_temperature(electron_cfg):
    with pytest.raises(NonPositiveParameter):
        beta_of(electron_cfg, 0.0)


def test_load_settings_reads_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("RELQHE_OUT_DIR", str(tmp_path / "results"))
    monkeypatch.setenv("RELQHE_LOG_LEVEL", "debug")
    monkeypatch.setenv("RELQHE_SERIES_REL_TOL", "1e-12")
    monkeypatch.setenv("RELQHE_SERIES_MAX_TERMS", "50000")
    settings_ = load_settings(env_file=None)
    assert settings_.out_dir == tmp_path / "results"
    assert settings_.log_level == "DEBUG"
    assert settings_.series_rel_tol == 1e-12
    assert settings_.series_max_terms == 50_000


def test_load_settings_defaults(monkeypatch):
    for name in ("RELQHE_OUT_DIR", "RELQHE_LOG_LEVEL", "RELQHE_SERIES_REL_TOL", "RELQHE_SERIES_MAX_TERMS"):
        monkeypatch.delenv(name, raising=False)
    settings_ = load_settings(env_file=None)
    assert str(settings_.out_dir) == "out"
    assert settings_.log_level == "WARNING"


def test_load_settings_reads_env_file_without_overriding(monkeypatch, tmp_path):
    for name in ("RELQHE_OUT_DIR", "RELQHE_LOG_LEVEL"):
        # registered with monkeypatch so values loaded from the file are undone
        monkeypatch.setenv(name, "unset")
        monkeypatch.delenv(name)
    monkeypatch.setenv("RELQHE_LOG_LEVEL", "error")
    env_file = tmp_path / ".env"
    env_file.write_text(f"RELQHE_OUT_DIR={tmp_path / 'from_file'}\nRELQHE_LOG_LEVEL=debug\n", encoding="utf-8")
    settings_ = load_settings(env_file)
    assert settings_.out_dir == tmp_path / "from_file"
    assert settings_.log_level == "ERROR"


# -- erfc --------------------------------------------------------------------


def test_erfc_matches_reference_on_grid():
    worst = 0.0
    for x in np.linspace(-10.0, 10.0, 401):
        ref = erfc_reference(float(x))
        worst = max(worst, abs(erfc(float(x)) - ref) / ref)
    assert worst < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
def test_erfc_relative_error_property(x):
    ref = erfc_reference(x)
    assert abs(erfc(x) - ref) <= 1e-12 * ref


def test_erfc_special_values():
    assert erfc(0.0) == 1.0
    assert erfc(math.inf) == 0.0
    assert erfc(-math.inf) == 2.0
    assert math.isnan(erfc(math.nan))


def test_erfcx_matches_scaled_reference():
    for x in (0.0, 0.5, 2.0, 2.5, 8.0):
        assert erfcx(x) == pytest.approx(math.exp(x * x) * erfc_reference(x), rel=1e-12)
    with pytest.raises(ValueError):
        erfcx(-1.0)


def test_maclaurin_reference_agrees_with_mpmath():
    for x in (0.1, 1.0, 3.0, 6.0):
        assert erfc_maclaurin(x) == pytest.approx(erfc_reference(x), rel=1e-14)


# -- series ------------------------------------------------------------------


@pytest.mark.parametrize("a", [1e-4, 1e-3, 5e-3, 0.05, 0.5, 3.0])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_gauss_sum_matches_extended_precision(a, k):
    result = gauss_sum(a, k)
    assert result.value == pytest.approx(gauss_sum_reference(a, k), rel=1e-11)
    assert result.log_value == pytest.approx(math.log(result.value), rel=1e-12)


def test_gauss_sum_accelerated_and_direct_agree_near_threshold():
    for k in (0, 1, 2):
        fast = gauss_sum(5e-3, k)
        slow = gauss_sum(5e-3, k, accelerate=False)
        assert fast.accelerated and not slow.accelerated
        assert fast.value == pytest.approx(slow.value, rel=1e-11)


def test_gauss_sum_theta_limit():
    a = 1e-8
    assert gauss_sum(a, 0).value == pytest.approx(0.5 * math.sqrt(math.pi / a) - 0.5, rel=1e-13)


def test_gauss_sum_errors():
    with pytest.raises(NonPositiveParameter):
        gauss_sum(0.0, 0)
    with pytest.raises(BadParameter):
        gauss_sum(1.0, 3)


def test_sum_blocks_reports_truncation_when_capped():
    def block(n):
        return np.vstack([np.exp(-1e-8 * n * n)])

    with pytest.raises(SeriesNotConverged) as info:
        sum_blocks(block, rows=1, rel_tol=1e-13, max_terms=10_000)
    assert info.value.terms_used == 10_000
    assert info.value.truncation_estimate > 1e-13


def test_sum_blocks_geometric_series():
    def block(n):
        return np.vstack([0.5**n, 0.25**n])

    result = sum_blocks(block, rows=2, rel_tol=1e-14)
    assert result.sums[0] == pytest.approx(1.0, rel=1e-13)
    assert result.sums[1] == pytest.approx(1.0 / 3.0, rel=1e-13)


# -- finite differences ------------------------------------------------------


def test_central_diff_accuracy():
    assert central_diff(math.sin, 0.3) == pytest.approx(math.cos(0.3), rel=1e-9)
    assert central_diff(math.exp, 20.0) == pytest.approx(math.exp(20.0), rel=1e-9)


def test_central_diff_scales_with_argument():
    # step follows |x|, so tiny-scale functions still resolve
    beta = 7.2e20
    assert central_diff(lambda b: b * b, beta) == pytest.approx(2.0 * beta, rel=1e-9)


def test_central_diff_non_finite_stencil():
    with pytest.raises(EvaluationFailure):
        central_diff(lambda x: 1.0 / x if x > 0 else math.inf, 0.0)
