# FILE: tests/analysis/test_lyapunov.py

import math

import numpy as np
import pytest
from scipy.integrate import quad

from switchcert.analysis.lyapunov import (
    LyapunovV1Spec,
    LyapunovV2Spec,
    V1_series,
    eval_generator_V1,
    eval_generator_V2,
    eval_V1,
    eval_V2,
    generator_V1_series,
)
from switchcert.dynamics.delays import ConstantDelay
from switchcert.dynamics.network import GeneralSDS
from switchcert.dynamics.nu import ExponentialNu
from switchcert.exceptions import DomainError
from switchcert.simulation.integrator import integrate
from switchcert.simulation.segments import ConstantSegment
from switchcert.switching.families import FixedSequence, RateMap
from switchcert.switching.paths import SwitchingPath, sample_path

UNIT_NU = ExponentialNu(0.0, allow_degenerate=True)


def frozen_trajectory(value, horizon=2.0, h=0.01, delay=None):
    """Trajectory of x' = 0 started from the constant history `value`."""
    n = len(value)
    system = GeneralSDS(lambda x, y, m, t: np.zeros(n), lambda x, y, m, t: np.zeros((n, 1)), dimension=n)
    path = SwitchingPath(jump_times=np.array([]), modes=np.array([0]), horizon=horizon)
    return integrate(system, path, delay or ConstantDelay(1.0), ConstantSegment(value), h, horizon, seed=0)


def test_zero_trajectory_has_zero_V1(constant_experiment):
    e = constant_experiment
    spec = LyapunovV1Spec.from_certificate(e.thm4, e.nu, e.model.nonlinearity, e.delay)
    traj = frozen_trajectory([0.0, 0.0])
    assert not np.any(V1_series(spec, traj))


def test_pure_quadratic_V1():
    spec = LyapunovV1Spec.build([[1.0]], 0.0, 0.0, UNIT_NU, ConstantDelay(1.0))
    assert eval_V1(spec, frozen_trajectory([2.0]), 1.0) == pytest.approx(4.0)


def test_integral_term_is_log_cosh():
    spec = LyapunovV1Spec.build([[0.0]], 1.0, 0.0, UNIT_NU, ConstantDelay(1.0))
    oracle = 2.0 * quad(math.tanh, 0.0, 1.0)[0]
    assert eval_V1(spec, frozen_trajectory([1.0]), 0.5) == pytest.approx(oracle, rel=1e-12)
    assert oracle == pytest.approx(2.0 * math.log(math.cosh(1.0)))


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 2.0])
def test_delay_integral_of_constant_state(t):
    spec = LyapunovV1Spec.build([[0.0]], 0.0, 1.0, UNIT_NU, ConstantDelay(1.0))
    value = eval_V1(spec, frozen_trajectory([0.5]), t)
    assert value == pytest.approx(math.tanh(0.5) ** 2, rel=1e-12)


def test_nu_weight_scales_quadratic_term():
    nu = ExponentialNu(0.1)
    spec = LyapunovV1Spec.build([[1.0]], 0.0, 0.0, nu, ConstantDelay(1.0))
    assert eval_V1(spec, frozen_trajectory([1.0]), 2.0) == pytest.approx(math.exp(0.2))


def test_V1_off_grid_raises():
    spec = LyapunovV1Spec.build([[1.0]], 0.0, 0.0, UNIT_NU, ConstantDelay(1.0))
    with pytest.raises(DomainError):
        eval_V1(spec, frozen_trajectory([1.0]), 0.005)


def test_V2_is_weighted_quadratic():
    spec = LyapunovV2Spec(P=[np.diag([1.0, 2.0])], nu=ExponentialNu(0.5))
    traj = frozen_trajectory([1.0, 1.0])
    assert eval_V2(spec, traj, 1.0) == pytest.approx(3.0 * math.exp(0.5))


def test_generator_vanishes_at_equilibrium(constant_experiment):
    e = constant_experiment
    spec = LyapunovV1Spec.from_certificate(e.thm4, e.nu, e.model.nonlinearity, e.delay)
    zero = np.zeros(2)
    for mode in (0, 1):
        assert eval_generator_V1(spec, e.model, e.family, e.rates, zero, zero, mode, 3.0) == 0.0


def test_generator_of_scalar_linear_decay():
    system = GeneralSDS(lambda x, y, m, t: -x, lambda x, y, m, t: [[0.0]], dimension=1)
    spec = LyapunovV1Spec.build([[1.0]], 0.0, 0.0, UNIT_NU, ConstantDelay(1.0))
    value = eval_generator_V1(spec, system, FixedSequence([0]), RateMap.constant(1.0, 1),
                              np.array([1.0]), np.array([0.3]), 0, 0.0)
    assert value == pytest.approx(-2.0)


def test_generator_V2_of_scalar_linear_decay():
    system = GeneralSDS(lambda x, y, m, t: -x, lambda x, y, m, t: [[0.0]], dimension=1)
    spec = LyapunovV2Spec(P=[np.array([[1.0]])], nu=UNIT_NU)
    value = eval_generator_V2(spec, system, FixedSequence([0]), RateMap.constant(1.0, 1),
                              np.array([2.0]), np.array([0.0]), 0, 0.0)
    assert value == pytest.approx(-8.0)


def test_certified_generator_is_non_positive(constant_experiment):
    e = constant_experiment
    spec = LyapunovV1Spec.from_certificate(e.thm4, e.nu, e.model.nonlinearity, e.delay)
    rng = np.random.default_rng(2)
    for _ in range(200):
        x, y = rng.uniform(-2.0, 2.0, 2), rng.uniform(-2.0, 2.0, 2)
        mode = int(rng.integers(0, 2))
        t = float(rng.uniform(0.0, 50.0))
        assert eval_generator_V1(spec, e.model, e.family, e.rates, x, y, mode, t) <= 0.0


def test_V1_dominates_weighted_quadratic_along_switched_path(constant_experiment):
    e = constant_experiment
    spec = LyapunovV1Spec.from_certificate(e.thm4, e.nu, e.model.nonlinearity, e.delay)
    path = SwitchingPath(jump_times=np.array([0.3, 1.1, 2.4]), modes=np.array([0, 1, 0, 1]), horizon=3.0)
    traj = integrate(e.model, path, e.delay, e.init, 0.01, 3.0, seed=7)
    values = V1_series(spec, traj)
    smallest = np.array([np.linalg.eigvalsh(e.thm4.P[m])[0] for m in traj.modes])
    lower = e.nu.value(traj.times) * smallest * np.sum(traj.states ** 2, axis=1)
    assert np.all(values >= lower * (1 - 1e-12))


def test_generator_follows_recorded_position_when_mode_returns():
    system = GeneralSDS(lambda x, y, m, t: np.zeros(1), lambda x, y, m, t: [[0.0]], dimension=1, mode_count=2)
    delay = ConstantDelay(0.5)
    spec = LyapunovV1Spec.build([[[1.0]], [[3.0]]], 0.0, 0.0, UNIT_NU, delay)
    family, rates = FixedSequence([0, 1, 0]), RateMap.constant(50.0, 2)
    path = sample_path(family, rates, 0, 2.0, seed=3)
    assert path.jump_count == 2
    traj = integrate(system, path, delay, ConstantSegment([1.0]), 0.01, 2.0, seed=3)
    left, _ = generator_V1_series(spec, system, family, rates, traj)
    positions = np.array([s.position for s in traj.family_states[:-1]])
    # mode 0 heads to mode 1 only from position 0; position 2 is the end of the list
    expected = np.select([positions == 0, positions == 1], [100.0, -100.0], 0.0)
    assert np.any(positions == 2)
    np.testing.assert_allclose(left, expected)
