# FILE: tests/conftest.py

import json

import numpy as np
import pytest

from switchcert.config.builders import build_experiment
from switchcert.config.experiment import load_experiment, parse_experiment
from switchcert.operations.common import bundled_experiment_path


@pytest.fixture
def constant_config():
    """Bundled constant-delay experiment."""
    return load_experiment(bundled_experiment_path("constant"))


@pytest.fixture
def affine_config():
    """Bundled affine-delay experiment."""
    return load_experiment(bundled_experiment_path("affine"))


@pytest.fixture
def constant_experiment(constant_config):
    return build_experiment(constant_config)


@pytest.fixture
def affine_experiment(affine_config):
    return build_experiment(affine_config)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_pd(rng, n, shift=1.0):
    """Random symmetric positive definite n x n matrix."""
    m = rng.standard_normal((n, n))
    return m @ m.T + shift * np.eye(n)


@pytest.fixture
def small_config_data():
    """A one-mode, two-dimensional experiment that runs in milliseconds."""
    return {
        "name": "small",
        "model": {
            "D": [[[2.0, 0.0], [0.0, 3.0]]],
            "A": [[[0.1, 0.0], [0.0, -0.2]]],
            "B": [[[0.2, 0.1], [0.0, 0.1]]],
            "noise": {"kind": "delayed_output"},
            "noise_bounds": {
                "a": [1.0],
                "E": [[[0.0, 0.0], [0.0, 0.0]]],
                "F": [[[1.0, 0.0], [0.0, 1.0]]],
            },
        },
        "switching": {
            "family": {"kind": "fixed", "modes": [0]},
            "rates": [1.0],
            "initial_mode": 0,
        },
        "delay": {"kind": "constant", "c": 0.5},
        "nu": {"kind": "exp", "alpha": 0.01},
        "simulation": {
            "h": 0.01,
            "horizon": 1.0,
            "trials": 4,
            "seed": 7,
            "init": {"kind": "constant", "value": [0.3, -0.2]},
            "epsilons": [0.1],
        },
        "output": {"formats": ["json", "text", "csv"]},
    }


@pytest.fixture
def small_config(small_config_data):
    return parse_experiment(small_config_data)


@pytest.fixture
def write_config(tmp_path):
    """Write a config mapping to a JSON file and return its path."""
    def _write(data, name="experiment.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def make_pd(rng):
    """Factory for random positive definite matrices."""
    return lambda n, shift=1.0: random_pd(rng, n, shift)
