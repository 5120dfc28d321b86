# FILE: tests/analysis/test_halanay_and_classification.py

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from switchcert.analysis.classification import classify_stability
from switchcert.analysis.ensemble import McStats
from switchcert.analysis.halanay import HalanayProblem, halanay_bound_check, halanay_integrate
from switchcert.dynamics.delays import ConstantDelay
from switchcert.dynamics.nu import ExponentialNu
from switchcert.exceptions import ConfigurationError, ValidationFailure


def test_undelayed_decay_matches_exponential():
    p = HalanayProblem.constant(alpha=2.0, beta=0.0, j0=0.0, delay=ConstantDelay(1.0), u0=1.0)
    series = halanay_integrate(p, 0.001, 3.0)
    assert np.max(np.abs(series.u - np.exp(-2.0 * series.times))) <= 2e-3


def test_delayed_decay_stays_below_initial_value():
    p = HalanayProblem.constant(alpha=2.0, beta=1.0, j0=0.0, delay=ConstantDelay(1.0), u0=1.0)
    series = halanay_integrate(p, 0.01, 10.0)
    assert np.max(series.u) <= 1.0
    assert series.u[-1] < 0.1


def test_forced_solution_respects_bound():
    p = HalanayProblem.constant(alpha=2.0, beta=1.0, j0=3.0, delay=ConstantDelay(1.0), u0=0.5, eta=1.0)
    report = halanay_bound_check(p, 0.01, 20.0)
    assert report.passed
    assert report.bound == 3.0
    assert report.sup_u <= 3.0 + report.allowed
    assert report.min_gap == pytest.approx(1.0)


def test_forced_solution_settles_just_below_forcing_level():
    p = HalanayProblem.constant(alpha=2.0, beta=1.0, j0=3.0, delay=ConstantDelay(1.0), u0=0.5, eta=1.0)
    series = halanay_integrate(p, 0.01, 20.0)
    inside = (series.u >= 2.9) & (series.u <= 3.0)
    entry = int(np.argmax(inside))
    assert inside[entry]
    assert np.all(inside[entry:])
    assert series.times[entry] < 5.0


@pytest.mark.parametrize("beta,j0", [(0.0, 0.0), (1.0, 0.0)])
def test_unforced_problems_pass(beta, j0):
    p = HalanayProblem.constant(alpha=2.0, beta=beta, j0=j0, delay=ConstantDelay(1.0), u0=1.0)
    assert halanay_bound_check(p, 0.01, 10.0).passed


def test_rate_gap_below_eta_is_a_validation_failure():
    p = HalanayProblem.constant(alpha=1.0, beta=0.8, j0=0.0, delay=ConstantDelay(1.0), u0=1.0, eta=0.5)
    with pytest.raises(ValidationFailure) as excinfo:
        halanay_bound_check(p, 0.1, 1.0)
    assert excinfo.value.witness["alpha"] == 1.0


def test_decay_rate_reaches_characteristic_root():
    alpha, beta, tau = 2.0, 1.0, 1.0
    root = brentq(lambda r: r - alpha + beta * math.exp(r * tau), 0.0, alpha)
    p = HalanayProblem.constant(alpha=alpha, beta=beta, j0=0.0, delay=ConstantDelay(tau), u0=1.0)
    series = halanay_integrate(p, 0.001, 10.0)
    assert np.all(np.diff(series.u) <= 0)
    u5, u10 = np.interp([5.0, 10.0], series.times, series.u)
    rate = (math.log(u5) - math.log(u10)) / 5.0
    assert rate >= root - 0.02


def test_problem_validation():
    delay = ConstantDelay(1.0)
    with pytest.raises(ConfigurationError):
        HalanayProblem.constant(alpha=1.0, beta=1.0, j0=0.0, delay=delay, u0=1.0)
    with pytest.raises(ConfigurationError):
        HalanayProblem.constant(alpha=2.0, beta=1.0, j0=-1.0, delay=delay, u0=1.0)
    with pytest.raises(ConfigurationError):
        halanay_integrate(HalanayProblem.constant(2.0, 1.0, 0.0, delay, 1.0), 0.0, 1.0)


def make_stats(mean_x2, horizon=300.0, exceedance=None, trials=100):
    mean_x2 = np.asarray(mean_x2, dtype=float)
    times = np.linspace(0.0, horizon, len(mean_x2))
    zeros = np.zeros_like(mean_x2)
    return McStats(times=times, mean_x2=mean_x2, se_x2=zeros, nu_mean_x2=zeros, trials=trials, step=0.01,
                   exceedance=exceedance or {})


def test_zero_ensemble_is_stable_in_every_sense():
    stats = make_stats(np.zeros(301), exceedance={0.1: np.zeros(301)})
    result = classify_stability(stats, ExponentialNu(0.01))
    assert result.mean_square and result.nu_mean_square
    assert result.in_probability == {"0.1": True}
    assert result.M == 0.0


def test_decaying_curve_with_slow_weight():
    times = np.linspace(0.0, 300.0, 301)
    result = classify_stability(make_stats(np.exp(-0.1 * times)), ExponentialNu(0.01))
    assert result.mean_square
    assert result.nu_mean_square
    assert result.M == pytest.approx(1.0)
    assert result.M_time == 0.0
    assert result.diagnostics["warnings"] == []


def test_weight_faster_than_decay_breaks_nu_stability():
    times = np.linspace(0.0, 300.0, 301)
    result = classify_stability(make_stats(np.exp(-0.01 * times)), ExponentialNu(0.05))
    assert not result.nu_mean_square
    assert result.M_time == pytest.approx(300.0)


def test_growing_curve_is_not_mean_square_stable():
    result = classify_stability(make_stats(np.linspace(1.0, 5.0, 301)), ExponentialNu(0.01))
    assert not result.mean_square
    assert not result.nu_mean_square


def test_exceedance_levels_per_epsilon():
    exceedance = {0.05: np.full(301, 0.2), 0.5: np.zeros(301)}
    result = classify_stability(make_stats(np.zeros(301), exceedance=exceedance), ExponentialNu(0.01),
                                levels={0.05: 0.1})
    assert result.in_probability == {"0.05": False, "0.5": True}


def test_short_horizon_warns(caplog):
    result = classify_stability(make_stats(np.zeros(11), horizon=10.0), ExponentialNu(0.01))
    assert result.diagnostics["nu_growth"] == pytest.approx(math.exp(0.1))
    assert result.diagnostics["warnings"]
    assert "nu grows only" in caplog.text
