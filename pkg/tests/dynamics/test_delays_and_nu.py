# FILE: tests/dynamics/test_delays_and_nu.py

import math

import numpy as np
import pytest

from switchcert.dynamics.delays import (
    AffineDelay,
    ConstantDelay,
    CustomDelay,
    build_delay,
    default_grid,
    validate_delay,
)
from switchcert.dynamics.nu import (
    CustomNu,
    ExponentialNu,
    LogLogNu,
    LogNu,
    PowerNu,
    build_nu,
    nu_constants,
    suggest_nu,
)
from switchcert.exceptions import ConfigurationError, ValidationFailure


def test_constant_delay_constants():
    delay = ConstantDelay(1.0)
    assert delay.tau_star == 1.0
    assert delay.tau_b == 1.0
    assert delay.value(3.0) == 1.0
    assert delay.derivative(3.0) == 0.0
    assert delay.lookup_time(0.0) == -1.0


def test_constant_delay_rejects_non_positive():
    with pytest.raises(ConfigurationError):
        ConstantDelay(0.0)


def test_affine_delay_constants():
    delay = AffineDelay(0.1, 1.0)
    assert delay.tau_star == 1.0
    assert delay.tau_b == 1.0
    assert delay.value(10.0) == pytest.approx(2.0)
    assert delay.derivative(5.0) == pytest.approx(0.1)


def test_affine_delay_fast_slope_needs_flag():
    with pytest.raises(ConfigurationError) as excinfo:
        AffineDelay(1.0, 1.0)
    assert excinfo.value.key == "delay.a"
    assert AffineDelay(1.0, 1.0, allow_fast=True).tau_b == 1.0
    assert math.isinf(AffineDelay(1.5, 1.0, allow_fast=True).tau_b)


def test_validate_delay_reports_grid_estimates():
    report = validate_delay(AffineDelay(0.1, 1.0), default_grid(100.0))
    assert report.tau_star_est == pytest.approx(1.0)
    assert report.tau_b_est == pytest.approx(1.0)
    assert report.max_discrepancy == pytest.approx(0.0, abs=1e-12)
    assert not report.fast_varying
    assert report.passed
    assert report.grid_points == 2001


def test_validate_delay_flags_fast_varying_delay():
    report = validate_delay(AffineDelay(1.0, 1.0, allow_fast=True), default_grid(10.0))
    assert report.fast_varying
    assert not report.passed


def test_validate_delay_rejects_non_positive_delay():
    delay = CustomDelay(lambda t: 1.0 - t, lambda t: -np.ones_like(t), tau_star=0.5, tau_b=1.0)
    with pytest.raises(ValidationFailure) as excinfo:
        validate_delay(delay, default_grid(2.0, 21))
    assert excinfo.value.witness["t"] == pytest.approx(1.0)


def test_build_delay_requires_parameters():
    with pytest.raises(ConfigurationError):
        build_delay("constant")
    with pytest.raises(ConfigurationError):
        build_delay("affine", a=0.1)
    with pytest.raises(ConfigurationError):
        build_delay("sawtooth")


def test_exponential_nu_constants_are_exact_for_constant_delay():
    constants = nu_constants(ExponentialNu(0.01), ConstantDelay(1.0), default_grid(100.0))
    assert constants.alpha_nu == 0.01
    assert constants.beta_nu_thm4 == pytest.approx(math.exp(-0.01), rel=1e-15)
    assert constants.beta_nu_thm5 == pytest.approx(math.exp(0.01), rel=1e-15)
    assert constants.closed_form["alpha_nu"] == 0.01


def test_power_nu_constants_for_affine_delay():
    delay = AffineDelay(0.1, 1.0)
    constants = nu_constants(PowerNu(0.01, delay.tau_b), delay, default_grid(100.0))
    assert constants.alpha_nu == pytest.approx(0.005)
    assert 0.885 <= constants.beta_nu_thm4 <= 0.895


def test_power_nu_is_one_at_history_start():
    nu = PowerNu(0.5, 2.0)
    assert nu.value(-2.0) == pytest.approx(1.0)
    assert nu.log_derivative(0.0) == pytest.approx(0.5 / 3.0)


def test_log_nu_with_unit_offset_vanishes_at_history_start():
    delay = ConstantDelay(1.0)
    with pytest.raises(ValidationFailure):
        nu_constants(LogNu(delay.tau_b), delay, default_grid(10.0))


def test_log_nu_with_offset_e_is_valid():
    delay = ConstantDelay(1.0)
    constants = nu_constants(LogNu(delay.tau_b, offset=math.e), delay, default_grid(10.0))
    assert constants.alpha_nu > 0
    assert constants.closed_form is None


def test_loglog_nu_value():
    nu = LogLogNu(1.0)
    assert nu.value(0.0) == pytest.approx(math.log(math.log(4.0)))


def test_non_diverging_custom_nu_is_rejected():
    nu = CustomNu(lambda t: np.ones_like(t), lambda t: np.zeros_like(t))
    with pytest.raises(ValidationFailure):
        nu_constants(nu, ConstantDelay(1.0), default_grid(10.0))


def test_nu_lookup_below_history_raises_configuration_error():
    delay = CustomDelay(lambda t: 2.0 + 0 * t, lambda t: 0 * t, tau_star=2.0, tau_b=1.0)
    with pytest.raises(ConfigurationError):
        nu_constants(ExponentialNu(0.1), delay, default_grid(5.0))


def test_fast_delay_gives_non_positive_beta(caplog):
    delay = AffineDelay(1.0, 1.0, allow_fast=True)
    constants = nu_constants(ExponentialNu(0.01), delay, default_grid(5.0))
    assert constants.beta_nu_thm4 <= 0
    assert "not positive" in caplog.text


def test_suggest_nu_selection():
    assert isinstance(suggest_nu(ConstantDelay(1.0)), ExponentialNu)
    assert isinstance(suggest_nu(AffineDelay(0.5, 1.0)), PowerNu)
    chosen = suggest_nu(AffineDelay(1.0, 1.0, allow_fast=True))
    assert isinstance(chosen, LogNu)
    assert chosen.value(-1.0) == pytest.approx(1.0)
    with pytest.raises(ConfigurationError):
        suggest_nu(AffineDelay(2.0, 1.0, allow_fast=True))


def test_build_nu():
    assert isinstance(build_nu("exp", 0.01, 1.0), ExponentialNu)
    assert isinstance(build_nu("loglog", None, 1.0), LogLogNu)
    with pytest.raises(ConfigurationError):
        build_nu("power", None, 1.0)
    with pytest.raises(ConfigurationError):
        build_nu("gamma", 0.1, 1.0)
