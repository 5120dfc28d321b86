# FILE: tests/dynamics/test_network.py

import numpy as np
import pytest

from switchcert.dynamics.network import (
    CustomNoise,
    DelayedOutputNoise,
    GeneralSDS,
    LinearMixNoise,
    NoiseBounds,
    SwitchedNetworkModel,
    TanhNonlinearity,
    ZeroNoise,
    check_mode_count,
)
from switchcert.dynamics.validation import validate_hypotheses
from switchcert.exceptions import ConfigurationError, InputError

I2 = np.eye(2)
Z2 = np.zeros((2, 2))


def delayed_output_model(a=1.0, F=I2):
    return SwitchedNetworkModel(
        [I2], [Z2], [Z2],
        noise=DelayedOutputNoise(),
        noise_bounds=NoiseBounds(a=(a,), E=(Z2,), F=(F,)),
    )


def test_tanh_integral_is_log_cosh():
    g = TanhNonlinearity(3)
    x = np.array([-30.0, 0.0, 0.7])
    assert np.allclose(g.integral(x), np.log(np.cosh(x)))
    assert np.all(g.G == 1.0)


def test_drift_matches_formula():
    D, A, B = [2 * I2], [np.array([[0.0, 1.0], [1.0, 0.0]])], [0.5 * I2]
    model = SwitchedNetworkModel(D, A, B)
    x, y = np.array([0.1, -0.2]), np.array([0.3, 0.4])
    expected = -D[0] @ x + A[0] @ np.tanh(x) + B[0] @ np.tanh(y)
    assert np.allclose(model.drift(x, y, 0), expected)


def test_zero_state_is_equilibrium():
    model = SwitchedNetworkModel([I2], [I2], [I2], noise=DelayedOutputNoise())
    zero = np.zeros(2)
    assert np.array_equal(model.drift(zero, zero, 0), zero)
    assert np.array_equal(model.diffusion(zero, zero, 0), np.zeros((2, 1)))


def test_noise_variants_shapes():
    u, v = np.array([1.0, 2.0]), np.array([3.0, 4.0])
    assert np.array_equal(DelayedOutputNoise().sigma(u, v, 0), v.reshape(-1, 1))
    assert ZeroNoise().sigma(u, v, 0).shape == (2, 1)
    mix = LinearMixNoise([I2], [2 * I2])
    assert np.array_equal(mix.sigma(u, v, 0).ravel(), u + 2 * v)


def test_custom_noise_warns_unless_attested(caplog):
    CustomNoise(lambda u, v, m: v, noise_dim=1)
    assert "not attested" in caplog.text


def test_model_rejects_non_diagonal_D():
    with pytest.raises(ConfigurationError) as excinfo:
        SwitchedNetworkModel([np.array([[1.0, 0.1], [0.0, 1.0]])], [Z2], [Z2])
    assert excinfo.value.key == "model.D"


def test_model_rejects_empty_state():
    with pytest.raises(ConfigurationError):
        SwitchedNetworkModel([[]], [[]], [[]])


def test_noise_bounds_require_psd():
    with pytest.raises(ConfigurationError):
        NoiseBounds(a=(1.0,), E=(-I2,), F=(I2,))
    with pytest.raises(ConfigurationError):
        NoiseBounds(a=(-1.0,), E=(Z2,), F=(I2,))


def test_noise_bounds_require_symmetry():
    with pytest.raises(InputError):
        NoiseBounds(a=(1.0,), E=(np.array([[0.0, 1.0], [0.0, 0.0]]),), F=(I2,))


def test_subsystem_freezes_one_mode():
    model = SwitchedNetworkModel([I2, 3 * I2], [Z2, I2], [Z2, Z2], noise=DelayedOutputNoise(),
                                 noise_bounds=NoiseBounds(a=(1.0, 2.0), E=(Z2, Z2), F=(I2, I2)))
    sub = model.subsystem(1)
    assert sub.mode_count == 1
    assert np.array_equal(sub.D[0], 3 * I2)
    assert sub.noise_bounds.a == (2.0,)


def test_general_sds_reshapes_outputs():
    system = GeneralSDS(lambda x, y, m, t: -x, lambda x, y, m, t: [[0.1], [0.2]], dimension=2)
    assert system.drift(np.ones(2), np.ones(2), 0, 0.0).shape == (2,)
    assert system.diffusion(np.ones(2), np.ones(2), 0, 0.0).shape == (2, 1)


def test_check_mode_count():
    model = SwitchedNetworkModel([I2], [Z2], [Z2])
    with pytest.raises(ConfigurationError):
        check_mode_count(model, 2)


def test_hypotheses_hold_for_delayed_output_noise():
    P = [np.array([[2.0, 0.3], [0.3, 1.0]])]
    report = validate_hypotheses(delayed_output_model(), sample_count=200, radius=2.0, seed=3, P=P)
    assert report.passed
    assert report.activation_passed
    assert report.trace_bound_slack >= -1e-12
    assert report.c1 == pytest.approx(np.linalg.eigvalsh(P[0])[0])


def test_hypotheses_fail_with_too_small_F():
    report = validate_hypotheses(delayed_output_model(F=0.5 * I2), sample_count=50, radius=1.0, seed=3)
    assert not report.passed
    assert report.witness["hypothesis"] == "trace_bound"


def test_hypotheses_fail_with_too_small_a():
    report = validate_hypotheses(delayed_output_model(a=0.5), sample_count=50, radius=1.0, seed=3, P=[I2])
    assert not report.passed
    assert report.witness["hypothesis"] == "weighted_trace_bound"


def test_hypotheses_need_noise_bounds():
    with pytest.raises(ConfigurationError):
        validate_hypotheses(SwitchedNetworkModel([I2], [Z2], [Z2]), 10, 1.0, seed=0)


def test_hypotheses_are_reproducible():
    first = validate_hypotheses(delayed_output_model(), 100, 1.0, seed=5)
    second = validate_hypotheses(delayed_output_model(), 100, 1.0, seed=5)
    assert first.trace_bound_slack == second.trace_bound_slack
